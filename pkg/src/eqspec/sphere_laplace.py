"""Laplace eigenvalues of conformal densities on the round sphere.

Galerkin discretization in real spherical harmonics of degree <= L:

    A = diag(l (l + 1)),   B_ij = int rho Y_i Y_j dv,

so the pencil A v = lambda B v gives the eigenvalues of Delta phi = lambda rho phi.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg

from .disk_steklov import IndexReport
from .errors import NotPositiveDefinite
from .rational_maps import RationalMap, poly
from .symmetry import rotation_taking

FOUR_PI = 4.0 * math.pi
NORTH = np.array([0.0, 0.0, 1.0])


class Provenance(str, enum.Enum):
    CONSTANT = "Constant"
    RATIONAL_MAP = "RationalMap"
    BUMP_SUM = "BumpSum"
    CUSTOM = "Custom"


# --------------------------------------------------------------------------
# quadrature and basis


def quadrature(L: int, n_theta: int | None = None, n_phi: int | None = None):
    """Gauss-Legendre in cos(theta) times uniform longitudes.

    Returns (x, w_x, phi, w_phi) with sum(w_x) = 2 and sum(w_phi) = 2 pi.
    """
    n_theta = 2 * L + 8 if n_theta is None else n_theta
    n_phi = 4 * L + 17 if n_phi is None else n_phi
    x, wx = np.polynomial.legendre.leggauss(n_theta)
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    return x, wx, phi, np.full(n_phi, 2 * math.pi / n_phi)


def normalized_legendre(L: int, x: np.ndarray) -> np.ndarray:
    """Array P[l, m, :] of orthonormal associated Legendre functions.

    Normalized so that P[l, m] (cos theta) e^{i m phi} has unit L^2 norm on the
    sphere (no Condon-Shortley phase).
    """
    x = np.asarray(x, dtype=float)
    s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    P = np.zeros((L + 1, L + 1, x.size))
    P[0, 0] = 1.0 / math.sqrt(FOUR_PI)
    for m in range(1, L + 1):
        P[m, m] = math.sqrt((2 * m + 1) / (2 * m)) * s * P[m - 1, m - 1]
    for m in range(0, L):
        P[m + 1, m] = math.sqrt(2 * m + 3) * x * P[m, m]
    for m in range(0, L + 1):
        for l in range(m + 2, L + 1):
            a = math.sqrt((4 * l * l - 1) / (l * l - m * m))
            b = math.sqrt(((l - 1) ** 2 - m * m) / (4 * (l - 1) ** 2 - 1))
            P[l, m] = a * (x * P[l - 1, m] - b * P[l - 2, m])
    return P


def basis_labels(L: int) -> list[tuple[int, int]]:
    """(l, m) per basis column: l ascending, then m = -l..l (negative m is sine)."""
    return [(l, m) for l in range(L + 1) for m in range(-l, l + 1)]


def real_harmonics(L: int, x: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Values of all real spherical harmonics on the grid, shape (len(x), len(phi), (L+1)^2)."""
    P = normalized_legendre(L, x)
    out = np.empty((len(x), len(phi), (L + 1) ** 2))
    root2 = math.sqrt(2.0)
    col = 0
    for l in range(L + 1):
        for m in range(-l, l + 1):
            if m < 0:
                out[:, :, col] = root2 * P[l, -m][:, None] * np.sin(-m * phi)[None, :]
            elif m == 0:
                out[:, :, col] = P[l, 0][:, None]
            else:
                out[:, :, col] = root2 * P[l, m][:, None] * np.cos(m * phi)[None, :]
            col += 1
    return out


def grid_points(x: np.ndarray, phi: np.ndarray) -> np.ndarray:
    s = np.sqrt(1.0 - x * x)
    return np.stack(
        [s[:, None] * np.cos(phi)[None, :], s[:, None] * np.sin(phi)[None, :], np.broadcast_to(x[:, None], (len(x), len(phi)))],
        axis=-1,
    )


# --------------------------------------------------------------------------
# densities


class SphereDensity:
    """A positive density on the unit sphere, evaluated at unit 3-vectors."""

    def __init__(
        self,
        evaluator: Callable[[np.ndarray], np.ndarray],
        provenance: Provenance = Provenance.CUSTOM,
        label: str = "custom",
        mass: float | None = None,
        mass_order: int = 160,
    ):
        self.evaluator = evaluator
        self.provenance = Provenance(provenance)
        self.label = label
        self.mass = self.integrate(mass_order) if mass is None else float(mass)
        if not self.mass > 0:
            raise ValueError("density must have positive mass")

    def __call__(self, points) -> np.ndarray:
        return self.evaluator(np.asarray(points, dtype=float))

    def integrate(self, order: int = 160) -> float:
        x, wx, phi, wphi = quadrature(order)
        vals = self(grid_points(x, phi))
        return float(wx @ vals @ wphi)

    def rotated(self, R: np.ndarray) -> "SphereDensity":
        """The pushforward density x -> rho(R^T x)."""
        ev = self.evaluator
        R = np.asarray(R, dtype=float)
        return SphereDensity(lambda pts: ev(pts @ R), self.provenance, f"{self.label} rotated", self.mass)

    def scaled(self, c: float) -> "SphereDensity":
        ev = self.evaluator
        return SphereDensity(lambda pts: c * ev(pts), self.provenance, f"{c:g}*{self.label}", c * self.mass)

    @classmethod
    def constant(cls, c: float) -> "SphereDensity":
        if c <= 0:
            raise ValueError("constant density must be positive")
        return cls(lambda pts: np.full(pts.shape[:-1], float(c)), Provenance.CONSTANT, f"constant({c:g})", FOUR_PI * c)

    def __add__(self, other: "SphereDensity") -> "SphereDensity":
        a, b = self.evaluator, other.evaluator
        prov = self.provenance if self.provenance == other.provenance else Provenance.CUSTOM
        return SphereDensity(lambda pts: a(pts) + b(pts), prov, f"{self.label}+{other.label}", self.mass + other.mass)


def homogeneous_coordinates(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(z0, z1) with z0 / z1 the stereographic coordinate (x1 + i x2) / (1 - x3).

    The two proportional charts are blended by hemisphere so neither vanishes.
    """
    x1, x2, x3 = points[..., 0], points[..., 1], points[..., 2]
    south = x3 < 0
    z0 = np.where(south, x1 + 1j * x2, 1 + x3)
    z1 = np.where(south, 1 - x3, x1 - 1j * x2)
    return z0, z1


def rational_map_density(R: RationalMap, mass: float | None = None) -> SphereDensity:
    """|d Phi|^2 for Phi = [p : q], in the pole-safe homogeneous form
    2 |W|^2 (|z0|^2 + |z1|^2)^2 / (|P|^2 + |Q|^2)^2."""
    d = R.degree
    W = R.wronskian()

    def ev(points):
        z0, z1 = homogeneous_coordinates(points)
        pv = R.p.homogeneous(z0, z1, d)
        qv = R.q.homogeneous(z0, z1, d)
        wv = W.homogeneous(z0, z1, 2 * d - 2)
        norm = np.abs(z0) ** 2 + np.abs(z1) ** 2
        return 2.0 * np.abs(wv) ** 2 * norm**2 / (np.abs(pv) ** 2 + np.abs(qv) ** 2) ** 2

    return SphereDensity(ev, Provenance.RATIONAL_MAP, f"map{R}", mass)


def spherical_harmonic_density(m: int) -> SphereDensity:
    """|d Phi_0|^2 = m(m+1) for the map by degree-m spherical harmonics."""
    if m < 1:
        raise ValueError("m must be >= 1")
    dens = SphereDensity.constant(m * (m + 1))
    dens.label = f"harmonic(m={m})"
    return dens


def north_bump(epsilon: float) -> SphereDensity:
    """Density of [epsilon z : 1], which concentrates at the north pole as epsilon -> 0."""
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    dens = rational_map_density(RationalMap(poly(0, epsilon), poly(1)), mass=2 * FOUR_PI)
    dens.provenance = Provenance.BUMP_SUM
    return dens


def bump_density(points, epsilon: float) -> SphereDensity:
    """Sum of degree-one bumps, each built at the north pole and rotated to its point."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
    for i in range(len(pts)):
        for j in range(i):
            if np.linalg.norm(pts[i] - pts[j]) < 1e-10:
                raise ValueError("bump points must be distinct")
    base = north_bump(epsilon)
    rots = [rotation_taking(NORTH, c) for c in pts]
    ev = base.evaluator

    def total(x):
        out = np.zeros(x.shape[:-1])
        for R in rots:
            out = out + ev(x @ R)
        return out

    return SphereDensity(total, Provenance.BUMP_SUM, f"bumps(n={len(pts)}, eps={epsilon:g})", 2 * FOUR_PI * len(pts))


# --------------------------------------------------------------------------
# solver


@dataclass(frozen=True)
class LaplaceSpectrum:
    lambdas: np.ndarray
    mass: float
    L: int
    normalized: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "normalized", self.lambdas * self.mass)


def gram_matrix(density: SphereDensity, L: int, n_theta: int | None = None, chunk: int = 8) -> np.ndarray:
    """B_ij = int rho Y_i Y_j by product quadrature, accumulated over latitude
    chunks in a fixed order."""
    x, wx, phi, wphi = quadrature(L, n_theta)
    nb = (L + 1) ** 2
    B = np.zeros((nb, nb))
    for start in range(0, len(x), chunk):
        xs = x[start : start + chunk]
        vals = density(grid_points(xs, phi))
        if not np.all(np.isfinite(vals)) or np.min(vals) <= 0:
            raise NotPositiveDefinite("density is not positive at the quadrature nodes")
        Y = real_harmonics(L, xs, phi).reshape(-1, nb)
        w = (wx[start : start + chunk, None] * wphi[None, :] * vals).reshape(-1)
        B += Y.T @ (w[:, None] * Y)
    return 0.5 * (B + B.T)


def stiffness(L: int) -> np.ndarray:
    return np.array([l * (l + 1) for l, _ in basis_labels(L)], dtype=float)


def laplace_solve(density: SphereDensity, L: int, n_eigs: int | None = None) -> LaplaceSpectrum:
    if L < 4:
        raise ValueError("L must be at least 4")
    B = gram_matrix(density, L)
    A = np.diag(stiffness(L))
    subset = None if n_eigs is None else [0, min(n_eigs, len(A)) - 1]
    try:
        w = scipy.linalg.eigh(A, B, eigvals_only=True, subset_by_index=subset, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"Gram matrix failed Cholesky: {exc}") from exc
    return LaplaceSpectrum(np.asarray(w), density.mass, L)


def index_nullity(density: SphereDensity, L: int, tol: float = 0.02, n_eigs: int = 64) -> IndexReport:
    """Eigenvalue counts below and at 1 for the pencil with the given density."""
    if not 0 < tol < 0.5:
        raise ValueError("tol must lie in (0, 0.5)")
    spec = laplace_solve(density, L, n_eigs=n_eigs)
    lam = spec.lambdas
    if len(lam) < (L + 1) ** 2 and lam[-1] <= 1 + tol:
        lam = laplace_solve(density, L).lambdas
    return IndexReport(int(np.sum(lam < 1 - tol)), int(np.sum(np.abs(lam - 1) <= tol)), tol, (L + 1) ** 2)
