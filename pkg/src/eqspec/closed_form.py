"""Closed-form normalized eigenvalues of round spheres, disks and their
equivariant maxima.

Every value returned here is an exact rational multiple of pi, so tables can
be compared by equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering

from .semigroup import NumericalSemigroup
from .symmetry import GroupSpec, build_group, orbit_size_generators


@total_ordering
@dataclass(frozen=True)
class NormalizedEigenvalue:
    """An eigenvalue times total mass, stored as ``coef * pi``."""

    coef: Fraction

    def __post_init__(self):
        c = Fraction(self.coef)
        if c < 0:
            raise ValueError("normalized eigenvalues are non-negative")
        object.__setattr__(self, "coef", c)

    @property
    def value(self) -> float:
        return float(self.coef) * math.pi

    def __float__(self) -> float:
        return self.value

    def __add__(self, other: "NormalizedEigenvalue") -> "NormalizedEigenvalue":
        return NormalizedEigenvalue(self.coef + other.coef)

    def __lt__(self, other: "NormalizedEigenvalue") -> bool:
        return self.coef < other.coef

    def symbolic(self) -> str:
        if self.coef == 0:
            return "0"
        if self.coef.denominator == 1:
            return f"{self.coef.numerator}*pi"
        return f"{self.coef.numerator}/{self.coef.denominator}*pi"

    def __str__(self) -> str:
        return self.symbolic()


def pi_times(c) -> NormalizedEigenvalue:
    return NormalizedEigenvalue(Fraction(c))


@dataclass(frozen=True)
class BubbleConfiguration:
    b: int
    s: int
    value: NormalizedEigenvalue
    pieces: int


def sphere_bar_lambda(s: int) -> NormalizedEigenvalue:
    """Normalized eigenvalue number ``s`` of the round unit sphere."""
    if s < 0:
        raise ValueError("s must be non-negative")
    m = math.isqrt(s)
    return pi_times(4 * m * (m + 1))


def disk_bar_sigma(k: int) -> NormalizedEigenvalue:
    """Normalized Steklov eigenvalue number ``k`` of the unit disk."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return pi_times(2 * ((k + 1) // 2))


@lru_cache(maxsize=None)
def orbit_semigroup(spec: GroupSpec) -> NumericalSemigroup:
    return NumericalSemigroup(orbit_size_generators(build_group(spec)))


def _sphere_spec(group) -> GroupSpec:
    spec = group if isinstance(group, GroupSpec) else GroupSpec.parse(str(group))
    if spec.is_disk:
        raise ValueError(f"{spec} is a disk group; use steklov_equivariant_disk")
    return spec


def lambda_equivariant_sphere(group, k: int) -> tuple[NormalizedEigenvalue, int, int]:
    """Return ``(Lambda_k, k', s)`` for a group acting on the round sphere."""
    if k < 1:
        raise ValueError("k must be >= 1")
    spec = _sphere_spec(group)
    kp = orbit_semigroup(spec).max_element_leq(k)
    s = k - kp
    return pi_times(8 * kp) + sphere_bar_lambda(s), kp, s


def steklov_equivariant_disk(n: int, k: int) -> NormalizedEigenvalue:
    """Supremum of the normalized k-th Steklov eigenvalue among Z_n- or D_n-invariant
    metrics on the disk."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    m, r = divmod(k, n)
    return pi_times(2 * (m * n + (r + 1) // 2))


def maximizing_configurations(group_or_n, k: int) -> list[BubbleConfiguration]:
    """All bubble counts b attaining the equivariant maximum at index k.

    An integer argument means the disk with n-fold symmetry; anything else is
    parsed as a sphere group.
    """
    if isinstance(group_or_n, int):
        n = group_or_n
        target = steklov_equivariant_disk(n, k)
        out = []
        for b in range(0, k + 1, n):
            value = pi_times(2 * b) + disk_bar_sigma(k - b)
            if value == target:
                out.append(BubbleConfiguration(b, k - b, value, b + (k - b != 0)))
        return out
    spec = _sphere_spec(group_or_n)
    target, _, _ = lambda_equivariant_sphere(spec, k)
    out = []
    for b in orbit_semigroup(spec).members_upto(k):
        value = pi_times(8 * b) + sphere_bar_lambda(k - b)
        if value == target:
            out.append(BubbleConfiguration(b, k - b, value, b + (k - b != 0)))
    return out


def hps_sharp(n: int, k: int) -> bool:
    """Whether the n-symmetric supremum reaches the unconstrained bound 2*pi*k."""
    sharp = steklov_equivariant_disk(n, k) == pi_times(2 * k)
    if sharp != (k % n in (0, 1)):
        raise AssertionError(f"closed form and congruence disagree at n={n}, k={k}")
    return sharp
