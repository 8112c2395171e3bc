from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqspec import closed_form, semigroup, symmetry
from eqspec.symmetry import GroupSpec


def brute_members(gens, upto):
    out = set()
    ranges = [range(upto // g + 1) for g in gens]
    for cs in itertools.product(*ranges):
        v = sum(c * g for c, g in zip(cs, gens))
        if v <= upto:
            out.add(v)
    return out


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 15), min_size=1, max_size=3), st.integers(0, 80))
def test_membership_matches_enumeration(gens, b):
    sg = semigroup.NumericalSemigroup(gens)
    assert sg.contains(b) == (b in brute_members(sorted(set(gens)), b))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=1, max_size=3), st.integers(0, 60), st.integers(0, 60))
def test_closed_under_addition(gens, a, b):
    sg = semigroup.NumericalSemigroup(gens)
    if sg.contains(a) and sg.contains(b):
        assert sg.contains(a + b)


def test_table_extends_past_horizon():
    sg = semigroup.NumericalSemigroup([6, 8, 12])
    assert sg.contains(6 * 101 + 8 * 3)
    assert not sg.contains(6 * 150 + 1)
    assert sg.max_element_leq(13) == 12


def test_rejects_bad_generators():
    with pytest.raises(ValueError):
        semigroup.NumericalSemigroup([])
    with pytest.raises(ValueError):
        semigroup.NumericalSemigroup([0, 3])


@pytest.mark.parametrize("name, gens", [("T", {4, 6, 12}), ("O", {6, 8, 12, 24}), ("I", {12, 20, 30, 60})])
def test_platonic_orbit_generators(name, gens):
    g = symmetry.build_group(GroupSpec.parse(name))
    assert symmetry.orbit_size_generators(g) == frozenset(gens)


def round_sphere(k):
    # lambda_k = l(l+1) on the unit sphere for l^2 <= k < (l+1)^2, area 4 pi
    l = math.isqrt(k)
    return 4 * l * (l + 1)


def test_round_sphere_and_disk_values():
    for k in range(0, 30):
        assert closed_form.sphere_bar_lambda(k).coef == round_sphere(k)
        assert closed_form.disk_bar_sigma(k).coef == 2 * math.ceil(k / 2)


@pytest.mark.parametrize("k, coef", [(1, 8), (3, 8), (4, 24), (5, 24), (6, 48), (9, 72), (10, 72), (11, 72), (12, 96)])
def test_octahedral_lambda_by_hand(k, coef):
    value, _, _ = closed_form.lambda_equivariant_sphere("O", k)
    assert value.coef == coef


def test_lambda_bubble_decomposition_consistent():
    for k in range(1, 40):
        value, kp, s = closed_form.lambda_equivariant_sphere("I", k)
        assert value.coef == 8 * kp + round_sphere(k - kp)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(1, 60))
def test_disk_equivariant_brute_force(n, k):
    brute = max(2 * b + 2 * ((k - b + 1) // 2) for b in range(0, k + 1, n))
    got = closed_form.steklov_equivariant_disk(n, k)
    assert got.coef == brute
    m, r = divmod(k, n)
    assert got.coef == 2 * (m * n + (r + 1) // 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9), st.integers(1, 60))
def test_hps_sharp_iff_congruence(n, k):
    sharp = closed_form.hps_sharp(n, k)
    assert sharp == (closed_form.steklov_equivariant_disk(n, k).coef == 2 * k)
    assert sharp == (k % n in (0, 1) or n == 1)


def test_maximizing_configurations_attain_value():
    for k in range(1, 25):
        value, _, _ = closed_form.lambda_equivariant_sphere("O", k)
        configs = closed_form.maximizing_configurations("O", k)
        assert configs and all(c.value == value for c in configs)


def test_normalized_eigenvalue_symbolic():
    v = closed_form.pi_times(Fraction(3, 2))
    assert math.isclose(v.value, 1.5 * math.pi)
    assert "pi" in v.symbolic()
