"""Finite Blaschke products as free-boundary harmonic maps of the disk."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .closed_form import disk_bar_sigma
from .disk_steklov import (
    BoundaryDensity,
    energy_and_weighted_norm,
    quadrature_nodes,
    steklov_solve,
)
from .errors import NoUnitEigenvalue

SUBPRODUCT_CAP = 1024


@dataclass(frozen=True)
class BlaschkeProduct:
    """e^{i phase} prod ((z - a_i) / (1 - conj(a_i) z))^{m_i}."""

    factors: tuple[tuple[complex, int], ...]
    phase: float = 0.0

    def __post_init__(self):
        facs = tuple((complex(a), int(m)) for a, m in self.factors)
        if not facs:
            raise ValueError("a Blaschke product needs at least one factor")
        for a, m in facs:
            if abs(a) >= 1:
                raise ValueError(f"zero {a} is not inside the unit disk")
            if m < 1:
                raise ValueError("multiplicities must be positive")
        zeros = [a for a, _ in facs]
        for i, j in itertools.combinations(range(len(zeros)), 2):
            if abs(zeros[i] - zeros[j]) < 1e-12:
                raise ValueError("zeros must be pairwise distinct; merge them into one multiplicity")
        object.__setattr__(self, "factors", facs)

    @classmethod
    def from_zeros(cls, zeros, multiplicities=None, phase: float = 0.0) -> "BlaschkeProduct":
        mults = [1] * len(zeros) if multiplicities is None else multiplicities
        return cls(tuple(zip(zeros, mults)), phase)

    @classmethod
    def power(cls, d: int) -> "BlaschkeProduct":
        return cls(((0j, d),))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    @property
    def s(self) -> int:
        return len(self.factors)

    @property
    def is_automorphism(self) -> bool:
        return self.degree == 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, np.exp(1j * self.phase), dtype=complex)
        for a, m in self.factors:
            out = out * ((z - a) / (1 - np.conj(a) * z)) ** m
        return out

    def subproduct(self, exponents) -> "BlaschkeProduct | None":
        """The product with multiplicities ``exponents``, or None for the constant 1."""
        facs = tuple((a, e) for (a, _), e in zip(self.factors, exponents) if e > 0)
        return BlaschkeProduct(facs) if facs else None

    def proper_subproduct_exponents(self) -> list[tuple[int, ...]]:
        total = math.prod(m + 1 for _, m in self.factors)
        if total > SUBPRODUCT_CAP:
            raise ValueError(f"{total} subproducts exceed the cap {SUBPRODUCT_CAP}")
        full = tuple(m for _, m in self.factors)
        ranges = [range(m + 1) for m in full]
        return [e for e in itertools.product(*ranges) if e != full]

    def rotated(self, alpha: float) -> "BlaschkeProduct":
        """Zeros rotated by e^{i alpha}."""
        return BlaschkeProduct(tuple((a * np.exp(1j * alpha), m) for a, m in self.factors), self.phase)

    def __str__(self):
        parts = []
        for a, m in self.factors:
            if a == 0:
                base = "z"
            elif a.imag == 0:
                base = f"phi({a.real:.4g})"
            else:
                base = f"phi({a.real:.3f}{a.imag:+.3f}i)"
            parts.append(base if m == 1 else f"{base}^{m}")
        return "*".join(parts)


def boundary_density(B: BlaschkeProduct) -> BoundaryDensity:
    """|d_theta B| on the circle, as a Poisson sum sum m_i P_{a_i}."""
    centers = [a for a, _ in B.factors]
    weights = [m for _, m in B.factors]
    dens = BoundaryDensity.poisson_sum(centers, weights, label=f"blaschke({B})")
    dens.mass = 2 * math.pi * B.degree
    return dens


def arg_derivative(B: BlaschkeProduct, n_nodes: int = 1024) -> tuple[np.ndarray, np.ndarray]:
    """d/dtheta arg B(e^{i theta}) by spectral differentiation of the unwrapped
    argument, independent of the Poisson formula."""
    theta = 2 * math.pi * np.arange(n_nodes) / n_nodes
    arg = np.unwrap(np.angle(B(np.exp(1j * theta))))
    periodic = arg - B.degree * theta
    k = np.fft.fftfreq(n_nodes, d=1.0 / n_nodes)
    k[n_nodes // 2] = 0  # drop the Nyquist mode for an odd derivative
    deriv = np.real(np.fft.ifft(1j * k * np.fft.fft(periodic))) + B.degree
    return theta, deriv


def index_lower_bound(B: BlaschkeProduct) -> int:
    """Combinatorial bound 2 prod(m_i + 1) - 3 from counting subproducts."""
    return 2 * math.prod(m + 1 for _, m in B.factors) - 3


@dataclass
class SharpnessReport:
    k_list: list[int]
    sigma_bar_at_1: list[float]
    uniform: list[float]
    gaps: list[float]
    strict: bool
    s: int
    degree: int
    min_gap: float = field(init=False)

    def __post_init__(self):
        self.min_gap = min(self.gaps) if self.gaps else math.nan


def sharpness_check(B: BlaschkeProduct, N: int = 256, tol: float = 1e-6, gap_tol: float = 1e-6) -> SharpnessReport:
    """Compare sigma_bar_k(|d_theta B|) with the uniform disk at every k where sigma_k = 1."""
    spec = steklov_solve(boundary_density(B), N)
    ks = [int(k) for k in np.flatnonzero(np.abs(spec.sigmas - 1.0) <= tol)]
    if not ks:
        raise NoUnitEigenvalue(f"no eigenvalue within {tol} of 1 at N={N}")
    at1 = [float(spec.normalized[k]) for k in ks]
    uni = [disk_bar_sigma(k).value for k in ks]
    gaps = [u - v for u, v in zip(uni, at1)]
    return SharpnessReport(ks, at1, uni, gaps, min(gaps) > gap_tol, B.s, B.degree)


@dataclass
class SubproductEntry:
    exponents: tuple[int, ...]
    part: str
    q_value: float
    q_value_direct: float


def _real_coeffs(u: np.ndarray, N: int) -> np.ndarray:
    c = np.fft.rfft(u) / len(u)
    return np.concatenate([[c[0].real], 2 * c[1 : N + 1].real, -2 * c[1 : N + 1].imag])


def verify_subproduct_eigenfunctions(B: BlaschkeProduct, N: int = 256) -> dict:
    """Evaluate Q_B on Re and Im of every proper subproduct and on B itself.

    Q is computed twice: through the Fourier pencil, and directly as
    int (|d_theta B'| - |d_theta B|) u^2.  The constant subproduct has a
    single nonzero real part.
    """
    dens = boundary_density(B)
    m = quadrature_nodes(N)
    theta = 2 * math.pi * np.arange(m) / m
    z = np.exp(1j * theta)
    rho = dens(theta)
    entries = []
    for e in B.proper_subproduct_exponents():
        sub = B.subproduct(e)
        if sub is None:
            values, sub_rho, parts = np.ones(m, dtype=complex), np.zeros(m), ("re",)
        else:
            values, sub_rho, parts = sub(z), boundary_density(sub)(theta), ("re", "im")
        for part in parts:
            u = values.real if part == "re" else values.imag
            energy, weighted = energy_and_weighted_norm(_real_coeffs(u, N), dens, N)
            direct = float(np.mean((sub_rho - rho) * u**2) * 2 * math.pi)
            entries.append(SubproductEntry(e, part, energy - weighted, direct))
    own = []
    for part in ("re", "im"):
        vals = B(z)
        u = vals.real if part == "re" else vals.imag
        energy, weighted = energy_and_weighted_norm(_real_coeffs(u, N), dens, N)
        own.append(energy - weighted)
    return {
        "entries": entries,
        "all_negative": all(en.q_value < 0 for en in entries),
        "self_q": own,
        "self_in_kernel": all(abs(q) <= 1e-8 for q in own),
        "count": len(entries),
    }
