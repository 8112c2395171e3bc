from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqspec import disk_steklov as ds
from eqspec.errors import NotPositiveDefinite

centers = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.7), st.floats(0, 2 * math.pi))


def uniform_sigmas(k_max, c=1.0):
    # harmonic extensions of cos(j theta), sin(j theta) have sigma = j / c
    return np.array([math.ceil(k / 2) / c for k in range(k_max + 1)])


@pytest.mark.parametrize("c", [1.0, 0.5, 3.0])
def test_uniform_spectrum(c):
    spec = ds.steklov_solve(ds.BoundaryDensity.uniform(c), 16, n_eigs=21)
    assert np.allclose(spec.sigmas, uniform_sigmas(20, c), atol=1e-12)
    assert spec.mass == pytest.approx(2 * math.pi * c)


@settings(max_examples=15, deadline=None)
@given(centers)
def test_poisson_density_is_conformal_disk(a):
    # P_a is the boundary Jacobian of a disk automorphism, and Dirichlet energy
    # is conformally invariant, so the spectrum is that of the uniform disk
    spec = ds.steklov_solve(ds.BoundaryDensity.poisson_sum([a]), 128, n_eigs=11)
    assert np.allclose(spec.sigmas, uniform_sigmas(10), atol=1e-8)


@settings(max_examples=15, deadline=None)
@given(centers, st.integers(-12, 12))
def test_poisson_coefficients_closed_form(a, j):
    theta = 2 * math.pi * np.arange(4096) / 4096
    numeric = np.mean(ds.poisson_kernel(theta, a) * np.exp(-1j * j * theta))
    assert abs(numeric - ds.poisson_coefficients(j, a)) < 1e-10


@settings(max_examples=10, deadline=None)
@given(st.lists(centers, min_size=1, max_size=3), st.floats(0.2, 5.0))
def test_normalized_spectrum_scale_invariant(cs, factor):
    dens = ds.BoundaryDensity.poisson_sum(cs, constant=0.5)
    a = ds.steklov_solve(dens, 48, n_eigs=8).normalized
    b = ds.steklov_solve(dens.scaled(factor), 48, n_eigs=8).normalized
    assert np.allclose(a, b, rtol=1e-10, atol=1e-10)


@settings(max_examples=10, deadline=None)
@given(st.lists(centers, min_size=1, max_size=3), st.floats(0, 2 * math.pi))
def test_spectrum_rotation_invariant(cs, alpha):
    a = ds.steklov_solve(ds.BoundaryDensity.poisson_sum(cs), 64, n_eigs=8).sigmas
    rot = [c * np.exp(1j * alpha) for c in cs]
    b = ds.steklov_solve(ds.BoundaryDensity.poisson_sum(rot), 64, n_eigs=8).sigmas
    assert np.allclose(a, b, atol=1e-10)


def test_quadrature_fourier_matches_exact():
    dens = ds.BoundaryDensity.poisson_sum([0.3 + 0.4j, -0.5], [2.0, 1.0], constant=0.25)
    j = np.arange(0, 40)
    assert np.max(np.abs(dens.fourier(39, 1024) - dens.exact_fourier(j))) < 1e-12


def test_sampled_density_matches_evaluator():
    dens = ds.BoundaryDensity.poisson_sum([0.2j, 0.4], constant=1.0)
    m = ds.quadrature_nodes(32)
    samples = dens(2 * math.pi * np.arange(m) / m)
    a = ds.steklov_solve(dens, 32, n_eigs=10).sigmas
    b = ds.steklov_solve(ds.BoundaryDensity(samples=samples), 32, n_eigs=10).sigmas
    assert np.allclose(a, b, atol=1e-10)


def test_convergence_in_N():
    dens = ds.glue_family(3, t=0.8)
    coarse = ds.steklov_solve(dens, 128, n_eigs=8).sigmas
    fine = ds.steklov_solve(dens, 256, n_eigs=8).sigmas
    assert np.allclose(coarse, fine, atol=1e-9)


def test_bad_inputs():
    with pytest.raises(ValueError):
        ds.BoundaryDensity.uniform(-1.0)
    with pytest.raises(ValueError):
        ds.BoundaryDensity.poisson_sum([1.2])
    with pytest.raises(ValueError):
        ds.steklov_solve(ds.BoundaryDensity.uniform(), 4)
    with pytest.raises(NotPositiveDefinite):
        ds.steklov_solve(ds.BoundaryDensity(lambda th: 1.0 + 2 * np.cos(th) + 0.5), 16)


def test_q_form_index_uniform():
    # rho = 1: Q(u) = E(u) - int u^2 is negative only on constants, zero on degree one
    rep = ds.q_form_index(ds.BoundaryDensity.uniform(1.0), 32)
    assert (rep.index, rep.nullity) == (1, 2)


def test_glue_limit_values():
    assert ds.glue_limit(2, 3) == pytest.approx(6 * math.pi)
    assert ds.glue_limit(3, 5) == pytest.approx(8 * math.pi)
    assert ds.glue_limit(2, 2) == 0.0


def test_glue_t_values():
    ts = ds.glue_t_values(0.995, 20)
    assert ts[0] == pytest.approx(0.9) and ts[-1] == pytest.approx(0.995)
    assert np.all(np.diff(ts) > 0)
    with pytest.raises(ValueError):
        ds.glue_t_values(0.9, 5, t_min=0.95)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=8, max_size=40), st.floats(0.3, 2.0))
def test_project_capped(values, level):
    v = np.array(values)
    lo, hi = 1e-3, 4.0
    mass = 2 * math.pi * level
    out = ds.project_capped(v, lo, hi, mass)
    assert np.all(out >= lo - 1e-15) and np.all(out <= hi + 1e-15)
    assert 2 * math.pi * np.mean(out) == pytest.approx(mass, rel=1e-12)
    # KKT: a single shift on the free entries
    free = (out > lo + 1e-9) & (out < hi - 1e-9)
    if np.count_nonzero(free) > 1:
        shift = out[free] - v[free]
        assert np.ptp(shift) < 1e-8


def test_project_capped_infeasible():
    with pytest.raises(ValueError):
        ds.project_capped(np.ones(8), 0.1, 1.0, 2 * math.pi * 5)


def test_maximizer_short_run_invariants():
    _, best, trace = ds.maximize_density(1, n_sym=2, cap=10.0, iterations=15, seed=7)
    assert len(trace.values) == 15
    assert max(trace.symmetry_defect) <= 1e-10
    assert max(trace.mass_defect) <= 1e-12
    assert max(trace.max_density) <= 10.0
    assert best == max(trace.values)
    assert np.all(np.diff(trace.best) >= 0)


def test_maximizer_deterministic():
    a = ds.maximize_density(2, iterations=10, seed=3)[1]
    b = ds.maximize_density(2, iterations=10, seed=3)[1]
    assert a == b
