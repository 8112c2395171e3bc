"""Steklov eigenvalues of the unit disk with a boundary density.

The density enters only through the boundary inner product, so a function
``u(theta)`` on the circle stands for its harmonic extension and the pencil is

    A = Dirichlet energy of the harmonic extension,
    B = int rho u v dtheta,

assembled in the real trigonometric basis {1, cos n, sin n : 1 <= n <= N}.
In that basis A is diagonal ``(0, n, n)`` and B is Toeplitz-plus-Hankel in
the Fourier coefficients of rho.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg
import scipy.optimize

from .errors import NotPositiveDefinite, StagnationWarning

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def poisson_kernel(theta, a: complex) -> np.ndarray:
    """(1 - |a|^2) / |e^{i theta} - a|^2, which integrates to 2*pi."""
    z = np.exp(1j * np.asarray(theta, dtype=float))
    return (1.0 - abs(a) ** 2) / np.abs(z - a) ** 2


def poisson_coefficients(j, a: complex) -> np.ndarray:
    """Closed-form Fourier coefficients of the Poisson kernel at ``a``:
    conj(a)^j for j >= 0 and a^|j| for j < 0."""
    j = np.asarray(j)
    out = np.where(j >= 0, np.conj(a) ** np.abs(j), a ** np.abs(j))
    return out.astype(complex)


class BoundaryDensity:
    """A positive density on the unit circle.

    Either ``evaluator`` (a vectorized function of theta) or ``samples``
    (values on a uniform grid starting at theta = 0) must be given.
    ``exact_fourier`` optionally supplies closed-form coefficients, used only
    for validation.
    """

    def __init__(
        self,
        evaluator: Callable[[np.ndarray], np.ndarray] | None = None,
        *,
        samples: np.ndarray | None = None,
        exact_fourier: Callable[[np.ndarray], np.ndarray] | None = None,
        label: str = "custom",
        mass_nodes: int = 8192,
    ):
        if (evaluator is None) == (samples is None):
            raise ValueError("give exactly one of evaluator or samples")
        self.label = label
        self.exact_fourier = exact_fourier
        if samples is not None:
            self.samples = np.array(samples, dtype=float)
            self.samples.setflags(write=False)
            self.evaluator = self._interpolate
            self.mass = TWO_PI * float(np.mean(self.samples))
        else:
            self.samples = None
            self.evaluator = evaluator
            theta = TWO_PI * np.arange(mass_nodes) / mass_nodes
            self.mass = TWO_PI * float(np.mean(evaluator(theta)))
        if not self.mass > 0:
            raise ValueError("density must have positive mass")

    def _interpolate(self, theta):
        m = len(self.samples)
        c = np.fft.fft(self.samples) / m
        freqs = np.fft.fftfreq(m, d=1.0 / m)
        theta = np.asarray(theta, dtype=float)
        return np.real(np.exp(1j * np.multiply.outer(theta, freqs)) @ c)

    def __call__(self, theta) -> np.ndarray:
        return self.evaluator(theta)

    def fourier(self, jmax: int, nodes: int) -> np.ndarray:
        """Coefficients rho_hat(j), j = 0..jmax, by the trapezoidal rule.

        rho_hat(j) = (1/2pi) int rho e^{-ij theta}; negative j follow from
        Hermitian symmetry.  Sampled densities use their own grid.
        """
        if self.samples is not None:
            values = self.samples
            if len(values) < 2 * jmax + 1:
                raise ValueError(f"{len(values)} samples cannot resolve |j| <= {jmax}")
        else:
            theta = TWO_PI * np.arange(nodes) / nodes
            values = self.evaluator(theta)
        if np.min(values) <= 0:
            raise NotPositiveDefinite("density is not positive at the quadrature nodes")
        c = np.fft.rfft(values) / len(values)
        return c[: jmax + 1]

    def scaled(self, factor: float) -> "BoundaryDensity":
        if self.samples is not None:
            return BoundaryDensity(samples=factor * self.samples, label=self.label)
        ev = self.evaluator
        ex = self.exact_fourier
        return BoundaryDensity(
            lambda th: factor * ev(th),
            exact_fourier=None if ex is None else (lambda j: factor * ex(j)),
            label=self.label,
        )

    @classmethod
    def uniform(cls, c: float = 1.0) -> "BoundaryDensity":
        if c <= 0:
            raise ValueError("constant density must be positive")
        return cls(
            lambda th: np.full(np.shape(th), float(c)),
            exact_fourier=lambda j: np.where(np.asarray(j) == 0, float(c), 0.0).astype(complex),
            label=f"uniform({c:g})",
        )

    @classmethod
    def poisson_sum(cls, centers, weights=None, constant: float = 0.0, label: str = "poisson-sum") -> "BoundaryDensity":
        """constant + sum_i w_i P_{a_i}(theta)."""
        centers = [complex(a) for a in centers]
        if any(abs(a) >= 1 for a in centers):
            raise ValueError("Poisson centers must lie inside the unit disk")
        weights = [1.0] * len(centers) if weights is None else [float(w) for w in weights]

        def ev(theta):
            theta = np.asarray(theta, dtype=float)
            out = np.full(theta.shape, float(constant))
            for a, w in zip(centers, weights):
                out = out + w * poisson_kernel(theta, a)
            return out

        def exact(j):
            j = np.asarray(j)
            out = np.where(j == 0, float(constant), 0.0).astype(complex)
            for a, w in zip(centers, weights):
                out = out + w * poisson_coefficients(j, a)
            return out

        return cls(ev, exact_fourier=exact, label=label)


@dataclass(frozen=True)
class SteklovSpectrum:
    sigmas: np.ndarray
    mass: float
    basis_size: int
    normalized: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "normalized", self.sigmas * self.mass)


@dataclass(frozen=True)
class IndexReport:
    index: int
    nullity: int
    tol: float
    basis_size: int


def quadrature_nodes(n_basis: int) -> int:
    return 8 * n_basis


def steklov_pencil(density: BoundaryDensity, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Real pencil (A, B) of size 2N+1 in the basis [1, cos 1..N, sin 1..N].

    Both matrices carry a common factor 1/pi relative to the true energy
    and L^2 forms; the eigenvalues do not see it.
    """
    if N < 1:
        raise ValueError("N must be positive")
    c = density.fourier(2 * N, quadrature_nodes(N))
    re, im = c.real, c.imag
    n = np.arange(1, N + 1)
    diff = np.abs(n[:, None] - n[None, :])
    tot = n[:, None] + n[None, :]
    # Im rho_hat is odd in j: Im rho_hat(-j) = -Im rho_hat(j)
    sdiff = n[None, :] - n[:, None]
    im_diff = np.sign(sdiff) * im[np.abs(sdiff)]

    size = 2 * N + 1
    B = np.empty((size, size))
    B[0, 0] = 2 * re[0]
    B[0, 1 : N + 1] = 2 * re[n]
    B[0, N + 1 :] = -2 * im[n]
    B[1 : N + 1, 0] = B[0, 1 : N + 1]
    B[N + 1 :, 0] = B[0, N + 1 :]
    B[1 : N + 1, 1 : N + 1] = re[diff] + re[tot]
    B[N + 1 :, N + 1 :] = re[diff] - re[tot]
    cs = -im[tot] - im_diff  # rows cos n, columns sin m
    B[1 : N + 1, N + 1 :] = cs
    B[N + 1 :, 1 : N + 1] = cs.T
    A = np.diag(np.concatenate([[0.0], n, n]).astype(float))
    return A, B


def _generalized_eigh(A, B, n_eigs=None, vectors=False):
    subset = None if n_eigs is None else [0, min(n_eigs, len(A)) - 1]
    try:
        return scipy.linalg.eigh(A, B, subset_by_index=subset, eigvals_only=not vectors, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"Gram matrix failed Cholesky: {exc}") from exc


def steklov_eigenpairs(density: BoundaryDensity, N: int, n_eigs: int | None = None):
    """Eigenvalues and B-orthonormal eigenvectors (columns) of the pencil."""
    A, B = steklov_pencil(density, N)
    w, v = _generalized_eigh(A, B, n_eigs, vectors=True)
    return w, v


def steklov_solve(density: BoundaryDensity, N: int, n_eigs: int | None = None) -> SteklovSpectrum:
    if N < 8:
        raise ValueError("N must be at least 8")
    A, B = steklov_pencil(density, N)
    w = _generalized_eigh(A, B, n_eigs)
    return SteklovSpectrum(np.asarray(w), density.mass, 2 * N + 1)


def q_form_index(density: BoundaryDensity, N: int, tol: float = 1e-6) -> IndexReport:
    """Negative count and nullity of Q(u) = E(u) - int rho u^2 on boundary functions."""
    if not 0 < tol < 0.5:
        raise ValueError("tol must lie in (0, 0.5)")
    spec = steklov_solve(density, N)
    s = spec.sigmas
    return IndexReport(int(np.sum(s < 1 - tol)), int(np.sum(np.abs(s - 1) <= tol)), tol, spec.basis_size)


def evaluate_basis(coeffs: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Evaluate real-basis coefficient vectors (columns) at the angles theta."""
    N = (coeffs.shape[0] - 1) // 2
    n = np.arange(1, N + 1)
    ang = np.multiply.outer(theta, n)
    basis = np.hstack([np.ones((len(theta), 1)), np.cos(ang), np.sin(ang)])
    return basis @ coeffs


def energy_and_weighted_norm(u_coeffs: np.ndarray, density: BoundaryDensity, N: int) -> tuple[float, float]:
    """(E(u), int rho u^2) for one real-basis vector, both without the 1/pi factor."""
    A, B = steklov_pencil(density, N)
    return math.pi * float(u_coeffs @ A @ u_coeffs), math.pi * float(u_coeffs @ B @ u_coeffs)


def glue_family(n: int, bumps_per_point: int = 1, t: float = 0.0, weights=None) -> BoundaryDensity:
    """1 + sum_j w_j P_{t e^{2 pi i j/n}}: the uniform disk with n symmetric
    Poisson bumps that concentrate into attached disks as t -> 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= t < 1:
        raise ValueError("t must lie in [0, 1)")
    if weights is None:
        weights = [float(bumps_per_point)] * n
    if len(weights) != n:
        raise ValueError("need one weight per bump")
    centers = [t * np.exp(2j * np.pi * j / n) for j in range(n)]
    dens = BoundaryDensity.poisson_sum(centers, weights, constant=1.0, label=f"glue(n={n}, t={t:g})")
    dens.mass = TWO_PI * (1.0 + sum(weights))
    return dens


def glue_t_values(t_max: float = 0.995, steps: int = 20, t_min: float = 0.9) -> np.ndarray:
    """Sweep points clustered toward t_max, geometric in the distance 1 - t.

    Below t ~ 0.85 the normalized eigenvalue first dips under its t = 0 value
    before the bumps separate, so sweeps start in the concentrating regime.
    """
    if not 0 <= t_min < t_max < 1 or steps < 2:
        raise ValueError("need 0 <= t_min < t_max < 1 and steps >= 2")
    return 1.0 - np.geomspace(1.0 - t_min, 1.0 - t_max, steps)


def glue_limit(n: int, k: int, bumps_per_point: int = 1) -> float:
    """Normalized sigma_k of the t -> 1 limit: the unit disk plus n disks of
    boundary weight ``bumps_per_point``, as a disjoint union."""
    w = float(bumps_per_point)
    ladder = [0.0] + [j for j in range(1, k + 2) for _ in range(2)]
    union = sorted(ladder + [x / w for x in ladder for _ in range(n)])
    return union[k] * TWO_PI * (1.0 + n * w)


def glue_sweep(n: int, k: int, t_values=None, N: int = 512, bumps_per_point: int = 1) -> list[tuple[float, float]]:
    """(t, normalized sigma_k) along a gluing family."""
    t_values = glue_t_values() if t_values is None else t_values
    out = []
    for t in sorted(t_values):
        spec = steklov_solve(glue_family(n, bumps_per_point, t), N, n_eigs=k + 1)
        out.append((float(t), float(spec.normalized[k])))
    return out


# --------------------------------------------------------------------------
# projected subgradient ascent


@dataclass
class MaximizerTrace:
    values: list[float] = field(default_factory=list)
    best: list[float] = field(default_factory=list)
    steps: list[float] = field(default_factory=list)
    cluster_sizes: list[int] = field(default_factory=list)
    max_density: list[float] = field(default_factory=list)
    symmetry_defect: list[float] = field(default_factory=list)
    mass_defect: list[float] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)


def _symmetrize(values: np.ndarray, n_sym: int) -> np.ndarray:
    m = len(values)
    shift = m // n_sym
    return np.mean([np.roll(values, j * shift) for j in range(n_sym)], axis=0)


def _rotation_defect(values: np.ndarray, n_sym: int) -> float:
    shift = len(values) // n_sym
    return float(np.max(np.abs(np.roll(values, shift) - values))) if n_sym > 1 else 0.0


def project_capped(values: np.ndarray, lo: float, hi: float, mass: float) -> np.ndarray:
    """Euclidean projection onto {lo <= rho <= hi, 2 pi mean(rho) = mass}."""
    target = mass / TWO_PI
    if not lo <= target <= hi:
        raise ValueError("mass constraint is incompatible with the bounds")

    def excess(shift):
        return float(np.mean(np.clip(values + shift, lo, hi))) - target

    a = lo - float(np.max(values))
    b = hi - float(np.min(values))
    shift = scipy.optimize.brentq(excess, a, b, xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=500)
    out = np.clip(values + shift, lo, hi)
    # absorb the residual bisection error into the free (unclipped) entries
    free = (out > lo) & (out < hi)
    if np.any(free):
        out[free] += (target - np.mean(out)) * len(out) / np.count_nonzero(free)
        out = np.clip(out, lo, hi)
    return out


def maximize_density(
    k: int,
    n_sym: int = 1,
    cap: float = 10.0,
    iterations: int = 300,
    seed: int = 0x5EED,
    N: int = 32,
    step0: float = 0.5,
    cluster_width: float = 1e-4,
    window: int = 60,
    perturbation: float = 0.3,
):
    """Projected subgradient ascent of the normalized k-th Steklov eigenvalue over
    Z_{n_sym}-symmetric densities with unit mass and 0 < rho <= cap.

    Each step averages phi^2 over the eigenfunctions whose eigenvalue lies in
    the cluster [sigma_k, sigma_k (1 + cluster_width)]; on the unit-mass slice the
    ascent direction of sigma_k * mass is sigma_k (1 - phi^2) with mean removed.
    Returns ``(best density, best normalized sigma_k, trace)``.
    """
    if cap <= 1 / TWO_PI:
        raise ValueError("cap must exceed 1/(2 pi) so a unit-mass density fits under it")
    if n_sym < 1 or k < 1:
        raise ValueError("need k >= 1 and n_sym >= 1")
    m = quadrature_nodes(N)
    m -= m % n_sym
    theta = TWO_PI * np.arange(m) / m
    rho_min = 1e-6 * cap
    rng = np.random.default_rng(seed)

    # smooth random start, symmetrized and projected
    modes = np.arange(1, 5) * n_sym
    amp = rng.standard_normal((2, len(modes))) * perturbation / len(modes)
    start = 1.0 + amp[0] @ np.cos(np.outer(modes, theta)) + amp[1] @ np.sin(np.outer(modes, theta))
    rho = project_capped(_symmetrize(start / TWO_PI, n_sym), rho_min, cap, 1.0)

    trace = MaximizerTrace(parameters={
        "k": k, "n_sym": n_sym, "cap": cap, "iterations": iterations, "seed": seed, "N": N,
        "nodes": m, "step0": step0, "step_rule": "step0/sqrt(iter)", "cluster_width": cluster_width,
        "rho_min": rho_min, "stagnation_window": window,
    })
    best_val, best_rho, last_improve = -np.inf, rho, 0
    for it in range(1, iterations + 1):
        dens = BoundaryDensity(samples=rho, label="iterate")
        w, v = steklov_eigenpairs(dens, N, n_eigs=min(2 * N + 1, k + 8))
        sigma_k = float(w[k])
        val = sigma_k * dens.mass
        if val > best_val + 1e-12:
            best_val, best_rho, last_improve = val, rho.copy(), it
        cluster = np.flatnonzero(np.abs(w - sigma_k) <= cluster_width * max(sigma_k, 1e-12))
        # eigenvectors are B-orthonormal for the 1/pi-scaled form: int rho phi^2 = pi
        phi = evaluate_basis(v[:, cluster], theta) / np.sqrt(math.pi)
        phi2 = np.mean(phi**2, axis=1)
        grad = sigma_k * (1.0 - phi2)
        grad -= np.mean(grad)
        gmax = float(np.max(np.abs(grad)))
        step = step0 / math.sqrt(it)
        if gmax > 0:
            rho = rho + step * np.mean(rho) * grad / gmax
        rho = project_capped(_symmetrize(rho, n_sym), rho_min, cap, 1.0)

        trace.values.append(val)
        trace.best.append(best_val)
        trace.steps.append(step)
        trace.cluster_sizes.append(len(cluster))
        trace.max_density.append(float(np.max(rho)))
        trace.symmetry_defect.append(_rotation_defect(rho, n_sym))
        trace.mass_defect.append(abs(TWO_PI * float(np.mean(rho)) - 1.0))
        if it - last_improve == window:
            msg = f"no improvement in iterations {last_improve + 1}..{it}"
            trace.warnings.append(f"StagnationWarning: {msg}")
            warnings.warn(msg, StagnationWarning, stacklevel=2)
    best = BoundaryDensity(samples=best_rho, label=f"maximizer(k={k}, n_sym={n_sym})")
    return best, best_val, trace
