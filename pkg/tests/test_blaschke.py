from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqspec import blaschke, disk_steklov
from eqspec.blaschke import BlaschkeProduct
from eqspec.errors import NoUnitEigenvalue

zero = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.6), st.floats(0, 2 * math.pi))


@settings(max_examples=15, deadline=None)
@given(st.lists(zero, min_size=1, max_size=3, unique_by=lambda a: round(a.real, 2) + 1j * round(a.imag, 2)))
def test_density_is_arg_derivative(zs):
    B = BlaschkeProduct.from_zeros(zs)
    theta, d = blaschke.arg_derivative(B, 2048)
    assert np.max(np.abs(d - blaschke.boundary_density(B)(theta))) < 1e-9


def test_boundary_modulus_one_and_zeros():
    B = BlaschkeProduct.from_zeros([0.3, -0.2 + 0.5j], [2, 1], phase=0.7)
    z = np.exp(1j * np.linspace(0, 6, 50))
    assert np.allclose(np.abs(B(z)), 1.0)
    assert abs(B(0.3)) < 1e-14 and abs(B(-0.2 + 0.5j)) < 1e-14
    assert B.degree == 3 and B.s == 2


def test_mass_is_two_pi_degree():
    B = BlaschkeProduct.from_zeros([0.1, 0.5j, -0.4], [1, 2, 1])
    dens = blaschke.boundary_density(B)
    theta = 2 * math.pi * np.arange(8192) / 8192
    assert 2 * math.pi * np.mean(dens(theta)) == pytest.approx(dens.mass, rel=1e-12)
    assert dens.mass == pytest.approx(2 * math.pi * 4)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_power_index_exact(d):
    rep = disk_steklov.q_form_index(blaschke.boundary_density(BlaschkeProduct.power(d)), 64)
    assert (rep.index, rep.nullity) == (2 * d - 1, 2)


@settings(max_examples=8, deadline=None)
@given(st.lists(zero, min_size=2, max_size=3, unique_by=lambda a: round(a.real, 2) + 1j * round(a.imag, 2)))
def test_index_depends_only_on_degree(zs):
    # the multiplicity of the eigenvalue 1 stays 2 along the connected family of
    # degree-d products, so the count below it matches z^d
    B = BlaschkeProduct.from_zeros(zs)
    rep = disk_steklov.q_form_index(blaschke.boundary_density(B), 192)
    assert (rep.index, rep.nullity) == (2 * B.degree - 1, 2)


@settings(max_examples=8, deadline=None)
@given(st.lists(zero, min_size=1, max_size=3, unique_by=lambda a: round(a.real, 2) + 1j * round(a.imag, 2)),
       st.floats(0, 2 * math.pi))
def test_rotation_invariance(zs, alpha):
    B = BlaschkeProduct.from_zeros(zs)
    a = disk_steklov.steklov_solve(blaschke.boundary_density(B), 128, n_eigs=10).sigmas
    b = disk_steklov.steklov_solve(blaschke.boundary_density(B.rotated(alpha)), 128, n_eigs=10).sigmas
    assert np.max(np.abs(a - b)) <= 1e-10


def test_subproducts_negative_and_self_in_kernel():
    B = BlaschkeProduct.from_zeros([0.0, 0.5, -0.3j], [1, 2, 1])
    out = blaschke.verify_subproduct_eigenfunctions(B, 256)
    # 3 * 2 * 2 - 1 proper exponent vectors; the constant contributes one entry
    assert out["count"] == 2 * (3 * 2 * 2 - 1) - 1
    assert out["all_negative"]
    assert out["self_in_kernel"]
    for e in out["entries"]:
        assert e.q_value == pytest.approx(e.q_value_direct, rel=1e-8, abs=1e-8)


def test_index_lower_bound_formula():
    assert blaschke.index_lower_bound(BlaschkeProduct.power(3)) == 5
    assert blaschke.index_lower_bound(BlaschkeProduct.from_zeros([0, 0.5])) == 5
    assert blaschke.index_lower_bound(BlaschkeProduct.from_zeros([0, 0.5], [2, 1])) == 9


@pytest.mark.parametrize("m", [1, 2, 3])
def test_single_zero_power_has_zero_gap(m):
    rep = blaschke.sharpness_check(BlaschkeProduct.from_zeros([0.4], [m]), 128)
    assert rep.k_list == [2 * m - 1, 2 * m]
    assert rep.min_gap == pytest.approx(0.0, abs=1e-8)
    assert not rep.strict


def test_sharpness_at_unit_eigenvalue_is_two_pi_degree():
    B = BlaschkeProduct.from_zeros([0.0, 0.6])
    rep = blaschke.sharpness_check(B, 256)
    assert all(v == pytest.approx(4 * math.pi, rel=1e-9) for v in rep.sigma_bar_at_1)


def test_no_unit_eigenvalue_raises(monkeypatch):
    # a density whose spectrum avoids 1 entirely: sigma_k = ceil(k/2) / 0.7
    monkeypatch.setattr(blaschke, "boundary_density", lambda B: disk_steklov.BoundaryDensity.uniform(0.7))
    with pytest.raises(NoUnitEigenvalue):
        blaschke.sharpness_check(BlaschkeProduct.power(1), 16)


def test_validation():
    with pytest.raises(ValueError):
        BlaschkeProduct.from_zeros([1.0])
    with pytest.raises(ValueError):
        BlaschkeProduct.from_zeros([0.1, 0.1])
    with pytest.raises(ValueError):
        BlaschkeProduct(())
    with pytest.raises(ValueError):
        BlaschkeProduct.from_zeros([0.1], [0])


def test_subproduct_cap():
    B = BlaschkeProduct.from_zeros([0.1 * j for j in range(1, 7)], [3] * 6)
    with pytest.raises(ValueError):
        B.proper_subproduct_exponents()
