"""Polynomial machinery for holomorphic maps from the sphere to CP^1.

Coefficients may be Python ints, ``Fraction``s, sympy numbers (exact) or
floats/complex (numeric).  Ring operations never coerce, so exact inputs
stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

import numpy as np
import sympy

from .errors import CommonRoot, RankAmbiguous
from .semigroup import NumericalSemigroup

KERNEL_REL_TOL = 1e-9
GRAY_ZONE = (1e-11, 1e-7)
RESULTANT_TOL = 1e-10


def _clean(c):
    if isinstance(c, sympy.Basic):
        c = sympy.expand(c)
        if c.is_Integer:
            return int(c)
        if c.is_Rational:
            return Fraction(int(c.p), int(c.q))
    return c


def _is_zero(c) -> bool:
    if isinstance(c, sympy.Basic):
        return bool(sympy.expand(c) == 0)
    return c == 0


def _is_exact(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return True
    return isinstance(c, sympy.Basic) and c.is_number


def _to_complex(c) -> complex:
    return complex(sympy.N(c, 30)) if isinstance(c, sympy.Basic) else complex(c)


class ComplexPolynomial:
    """Polynomial in z with coefficients in ascending degree order."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=()):
        coeffs = [_clean(c) for c in coefficients]
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @classmethod
    def monomial(cls, k: int, c=1) -> "ComplexPolynomial":
        return cls([0] * k + [c])

    @classmethod
    def from_sympy(cls, expr, z=None) -> "ComplexPolynomial":
        z = z or sympy.Symbol("z")
        return cls(reversed(sympy.Poly(expr, z).all_coeffs()))

    @property
    def degree(self) -> float:
        """Degree, with -inf for the zero polynomial."""
        return len(self.coefficients) - 1 if self.coefficients else -math.inf

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def exact(self) -> bool:
        return all(_is_exact(c) for c in self.coefficients)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return ComplexPolynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return ComplexPolynomial([-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (Number, sympy.Basic)):
            return ComplexPolynomial([other * c for c in self.coefficients])
        if not self.coefficients or not other.coefficients:
            return ComplexPolynomial()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return ComplexPolynomial(out)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        other = _as_poly(other)
        if len(self.coefficients) != len(other.coefficients):
            return False
        return all(_is_zero(a - b) for a, b in zip(self.coefficients, other.coefficients))

    def __hash__(self):
        return hash(tuple(_to_complex(c) for c in self.coefficients))

    def derivative(self) -> "ComplexPolynomial":
        return ComplexPolynomial([k * c for k, c in enumerate(self.coefficients)][1:])

    def coeff_vector(self, length: int) -> np.ndarray:
        if len(self.coefficients) > length:
            raise ValueError("polynomial does not fit the requested length")
        v = np.zeros(length, dtype=complex)
        for k, c in enumerate(self.coefficients):
            v[k] = _to_complex(c)
        return v

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for c in reversed(self.coefficients):
            out = out * z + _to_complex(c)
        return out

    def homogeneous(self, z0, z1, formal_degree: int):
        """sum_k c_k z0^k z1^(D-k) for the formal degree D."""
        if self.degree > formal_degree:
            raise ValueError("formal degree below actual degree")
        z0 = np.asarray(z0, dtype=complex)
        z1 = np.asarray(z1, dtype=complex)
        out = np.zeros(np.broadcast(z0, z1).shape, dtype=complex)
        for k, c in enumerate(self.coefficients):
            out = out + _to_complex(c) * z0**k * z1 ** (formal_degree - k)
        return out

    def roots(self) -> np.ndarray:
        """Roots by companion-matrix eigenvalues (numpy.roots)."""
        if self.degree < 1:
            return np.zeros(0, dtype=complex)
        return np.roots(self.coeff_vector(len(self.coefficients))[::-1])

    def to_sympy(self, z=None):
        z = z or sympy.Symbol("z")
        terms = [sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.sympify(c)
                 for c in self.coefficients]
        return sympy.Add(*[c * z**k for k, c in enumerate(terms)])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coefficients):
            if _is_zero(c):
                continue
            terms.append(f"({c})" + ("" if k == 0 else f"*z^{k}"))
        return "ComplexPolynomial(" + (" + ".join(terms) or "0") + ")"


def _as_poly(x) -> ComplexPolynomial:
    if isinstance(x, ComplexPolynomial):
        return x
    return ComplexPolynomial([x])


def poly(*coefficients) -> ComplexPolynomial:
    """Shorthand: ``poly(1, 0, 0, 0, 1)`` is 1 + z^4."""
    return ComplexPolynomial(coefficients)


def wronskian(p: ComplexPolynomial, q: ComplexPolynomial) -> ComplexPolynomial:
    """p' q - p q', whose zeros are the ramification points of [p : q].

    Coefficient n is sum_{i+j=n+1} (i - j) p_i q_j, so the top term of two
    equal-degree inputs cancels exactly even in floating point.
    """
    a, b = p.coefficients, q.coefficients
    if not a or not b:
        return ComplexPolynomial()
    out = [0] * (len(a) + len(b) - 2) if len(a) + len(b) > 2 else [0]
    for i, pi in enumerate(a):
        for j, qj in enumerate(b):
            if i != j and i + j >= 1:
                out[i + j - 1] = out[i + j - 1] + (i - j) * pi * qj
    return ComplexPolynomial(out)


def resultant(p: ComplexPolynomial, q: ComplexPolynomial) -> complex:
    """Resultant of the monic-normalized pair via the Sylvester determinant."""
    m, n = int(p.degree), int(q.degree)
    if m < 0 or n < 0:
        return 0.0
    a = p.coeff_vector(m + 1)[::-1] / p.coeff_vector(m + 1)[-1]
    b = q.coeff_vector(n + 1)[::-1] / q.coeff_vector(n + 1)[-1]
    if m + n == 0:
        return 1.0
    syl = np.zeros((m + n, m + n), dtype=complex)
    for i in range(n):
        syl[i, i : i + m + 1] = a
    for i in range(m):
        syl[n + i, i : i + n + 1] = b
    return complex(np.linalg.det(syl))


@dataclass(frozen=True)
class RationalMap:
    """The holomorphic map [p : q] from CP^1 to CP^1."""

    p: ComplexPolynomial
    q: ComplexPolynomial

    def __post_init__(self):
        if self.p.is_zero() or self.q.is_zero():
            raise CommonRoot("a component polynomial vanishes identically")
        r = resultant(self.p, self.q)
        if abs(r) <= RESULTANT_TOL:
            raise CommonRoot(f"p and q share a root (|resultant| = {abs(r):.2e})")

    @property
    def degree(self) -> int:
        return int(max(self.p.degree, self.q.degree))

    def wronskian(self) -> ComplexPolynomial:
        return wronskian(self.p, self.q)

    def __str__(self):
        return f"[{self.p} : {self.q}]"


def identity_map() -> RationalMap:
    return RationalMap(poly(0, 1), poly(1))


def octahedral_map() -> RationalMap:
    """The degree-4 map [z^4 + 1 : sqrt(2) z^2].

    Its target action is unitary only for the dihedral subgroup generated by
    z -> iz and z -> 1/z.  The weight sqrt(2) normalizes v0^2 v1^2 in the
    monomial inner product; see :func:`octahedral_equivariant_map` for the
    normalization that makes the full octahedral action unitary.
    """
    return RationalMap(poly(1, 0, 0, 0, 1), poly(0, 0, sympy.sqrt(2)))


def octahedral_equivariant_map() -> RationalMap:
    """[z^4 + 1 : 2 sqrt(3) z^2], equivariant for the octahedral group.

    The two-dimensional summand of S^4 C^2 is span{v0^4 + v1^4, v0^2 v1^2};
    in the SU(2)-invariant norm |v0^(4-j) v1^j|^2 = 1 / binom(4, j) the
    orthonormal pair is (v0^4 + v1^4) / sqrt(2) and sqrt(6) v0^2 v1^2.
    """
    return RationalMap(poly(1, 0, 0, 0, 1), poly(0, 0, 2 * sympy.sqrt(3)))


def icosahedral_map() -> RationalMap:
    """The degree-7 I-equivariant map [z^7 - 7z^2 : 7z^5 + 1]."""
    return RationalMap(poly(0, 0, -7, 0, 0, 0, 0, 1), poly(1, 0, 0, 0, 0, 7))


def power_map(d: int) -> RationalMap:
    return RationalMap(ComplexPolynomial.monomial(d), poly(1))


# --------------------------------------------------------------------------
# differential of [p ^ q] -> [R(p, q)]


def _orthogonal_complement(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    u, _, _ = np.linalg.svd(np.column_stack([p, q]), full_matrices=True)
    return u[:, 2:]


def _random_complement(p: np.ndarray, q: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    n = len(p)
    while True:
        c = rng.standard_normal((n, n - 2)) + 1j * rng.standard_normal((n, n - 2))
        if np.linalg.matrix_rank(np.column_stack([p, q, c])) == n:
            return c


def _dpsi_matrix(rmap: RationalMap, complement: np.ndarray) -> np.ndarray:
    d = rmap.degree
    p = rmap.p
    q = rmap.q
    cols = []
    for c in complement.T:
        delta = ComplexPolynomial(list(c))
        cols.append(wronskian(p, delta).coeff_vector(2 * d - 1))
    for c in complement.T:
        delta = ComplexPolynomial(list(c))
        cols.append(-wronskian(q, delta).coeff_vector(2 * d - 1))
    m = np.column_stack(cols)
    r = rmap.wronskian().coeff_vector(2 * d - 1)
    r = r / np.linalg.norm(r)
    return m - np.outer(r, r.conj() @ m)


def dpsi_kernel(rmap: RationalMap, complement: str = "orthogonal", seed: int = 0x5EED) -> dict:
    """Kernel dimension of the differential of [p ^ q] -> [R(p, q)] and the
    resulting nullity 3 + 2 dim ker.

    ``complement`` selects the chart: "orthogonal" (complement of span{p, q}
    in coefficient space) or "random" (a seeded random complement).
    """
    d = rmap.degree
    if d == 1:
        return {"kernel_dim": 0, "nullity": 3, "singular_values": []}
    pv = rmap.p.coeff_vector(d + 1)
    qv = rmap.q.coeff_vector(d + 1)
    if complement == "orthogonal":
        comp = _orthogonal_complement(pv, qv)
    elif complement == "random":
        comp = _random_complement(pv, qv, np.random.default_rng(seed))
    else:
        raise ValueError(f"unknown complement {complement!r}")
    m = _dpsi_matrix(rmap, comp)
    s = np.linalg.svd(m, compute_uv=False)
    rel = s / s[0] if s[0] > 0 else np.zeros_like(s)
    if np.any((rel > GRAY_ZONE[0]) & (rel < GRAY_ZONE[1])):
        raise RankAmbiguous(f"singular values {rel} fall in the ambiguous zone {GRAY_ZONE}")
    kernel = int(np.sum(rel <= KERNEL_REL_TOL)) + (m.shape[1] - len(s))
    return {"kernel_dim": kernel, "nullity": 3 + 2 * kernel, "singular_values": rel.tolist()}


def dpsi_kernel_exact(rmap: RationalMap) -> int:
    """Exact kernel dimension over a monomial chart (sympy rank).

    The chart uses the monomials outside the pivot columns of [p; q], which
    spans a complement of span{p, q}.
    """
    if not (rmap.p.exact and rmap.q.exact):
        raise ValueError("exact kernel needs exact coefficients")
    d = rmap.degree
    if d == 1:
        return 0
    rows = sympy.Matrix([[sympy.sympify(c) for c in _padded(rmap.p, d + 1)],
                         [sympy.sympify(c) for c in _padded(rmap.q, d + 1)]])
    _, pivots = rows.rref()
    chart = [k for k in range(d + 1) if k not in pivots]
    cols = []
    for k in chart:
        cols.append(_padded(wronskian(rmap.p, ComplexPolynomial.monomial(k)), 2 * d - 1))
    for k in chart:
        cols.append(_padded(-wronskian(rmap.q, ComplexPolynomial.monomial(k)), 2 * d - 1))
    r = _padded(rmap.wronskian(), 2 * d - 1)
    # the quotient by the line through R(p, q): rank of [M | r] minus one
    full = sympy.Matrix([[sympy.sympify(x) for x in col] for col in cols + [r]]).T
    rank = full.rank(simplify=True) - 1
    return len(cols) - rank


def _padded(p: ComplexPolynomial, length: int) -> list:
    return list(p.coefficients) + [0] * (length - len(p.coefficients))


def ramification_degree(rmap: RationalMap) -> int:
    """Roots of R(p, q) with multiplicity (companion matrix) plus the drop at infinity."""
    w = rmap.wronskian()
    finite = len(w.roots())
    return finite + (2 * rmap.degree - 2 - int(w.degree))


# --------------------------------------------------------------------------
# degree and index constraints on equivariant harmonic spheres


def odd_floor(x: float, strict: bool = False) -> int:
    """Greatest odd integer <= x (or < x when ``strict``)."""
    if x < 1:
        raise ValueError("x must be at least 1")
    if isinstance(x, int) or float(x).is_integer():
        n = int(x)
        n = n - 1 if strict else n
    else:
        n = math.floor(x)
    return n if n % 2 == 1 else n - 1


def _odd_floor_sqrt(v: int, strict: bool) -> int:
    r = math.isqrt(v)
    exact_square = r * r == v
    if strict and exact_square:
        r -= 1
    return r if r % 2 == 1 else r - 1


def index_lower_bound_harmonic(d: int, strict: bool = False) -> int:
    """2d + 2 - oddfloor(sqrt(8d + 1)) for a full harmonic sphere of degree d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return 2 * d + 2 - _odd_floor_sqrt(8 * d + 1, strict)


def equivariant_degree_check(semigroup: NumericalSemigroup, m: int, d: int) -> bool:
    """Whether 2d - m(m+1) lies in the orbit semigroup."""
    if m < 1 or d < 1:
        raise ValueError("need m >= 1 and d >= 1")
    v = 2 * d - m * (m + 1)
    return v >= 0 and semigroup.contains(v)


# (rotation family, m) for which the only equivariant full map of minimal
# degree m(m+1)/2 is the spherical-harmonic map, whose index is m^2
_RIGID_MINIMAL = {("T", 2), ("O", 2), ("I", 2), ("I", 3)}
_ROTATION_FAMILY = {"T": "T", "Td": "T", "Th": "T", "O": "O", "Oh": "O", "I": "I", "Ih": "I"}


def minimal_stratum_index(spec, m: int) -> int | None:
    """Exact index m^2 when the minimal-degree stratum is rigid, else None."""
    if m == 1:
        return 1
    fam = _ROTATION_FAMILY.get(spec.family.value)
    return m * m if (fam, m) in _RIGID_MINIMAL else None


def admissible_pairs(group, k: int, use_rigidity: bool = True, strict: bool = False) -> list[tuple[int, int]]:
    """Pairs (m, d) allowed for a maximizer of the k-th eigenvalue.

    Conditions: d >= m(m+1)/2; 2d - m(m+1) in the orbit semigroup; the index
    lower bound is <= k.  With ``use_rigidity`` the minimal stratum
    d = m(m+1)/2 uses the exact index m^2 where only the spherical-harmonic
    map is equivariant.
    """
    from .closed_form import _sphere_spec, orbit_semigroup

    if k < 1:
        raise ValueError("k must be >= 1")
    spec = _sphere_spec(group)
    sg = orbit_semigroup(spec)
    out = []
    # the bound is >= d + 1 for d >= 2, so d <= k suffices
    for d in range(1, k + 2):
        m = 1
        while m * (m + 1) // 2 <= d:
            if equivariant_degree_check(sg, m, d):
                bound = index_lower_bound_harmonic(d, strict)
                if use_rigidity and 2 * d == m * (m + 1):
                    exact = minimal_stratum_index(spec, m)
                    if exact is not None:
                        bound = exact
                if bound <= k:
                    out.append((m, d))
            m += 1
    return sorted(out, key=lambda md: (md[1], md[0]))
