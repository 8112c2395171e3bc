from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqspec import mckay

GROUPS = {"2T": 24, "2O": 48, "2I": 120}
# degrees of the first invariant forms (Klein): 2T 6, 8, 12; 2O 8, 12, 18; 2I 12, 20, 30
FIRST_INVARIANTS = {"2T": (6, 8, 12), "2O": (8, 12, 18), "2I": (12, 20, 30)}


@pytest.mark.parametrize("name, order", GROUPS.items())
def test_graph_dimensions(name, order):
    g = mckay.mckay_graph(name)
    assert g.is_balanced()
    assert int(np.sum(g.dims**2)) == order
    assert len(mckay.binary_group(name)) == order


@pytest.mark.parametrize("name", GROUPS)
def test_invariant_degrees_small(name):
    g = mckay.mckay_graph(name)
    inv = [k for k in range(1, 31) if mckay.symmetric_power_decomposition(g, k).multiplicities[g.trivial_vertex] > 0]
    assert inv[:2] == list(FIRST_INVARIANTS[name][:2])
    assert FIRST_INVARIANTS[name][2] in inv


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(GROUPS)), st.integers(0, 40))
def test_decomposition_dimension(name, k):
    dec = mckay.symmetric_power_decomposition(mckay.mckay_graph(name), k)
    assert sum(dec.dims()) == k + 1
    assert np.all(dec.multiplicities >= 0)


@pytest.mark.parametrize("name", GROUPS)
@pytest.mark.parametrize("k", [0, 1, 4, 6, 7, 12])
def test_character_check(name, k):
    res = mckay.character_check(name, k)
    assert res["trace_error"] < 1e-10
    assert res["invariant_count"] == pytest.approx(res["expected_invariants"], abs=1e-10)
    assert res["character_norm"] == pytest.approx(res["expected_norm"], abs=1e-9)


def test_known_decompositions():
    g = mckay.mckay_graph("2O")
    assert sorted(mckay.symmetric_power_decomposition(g, 4).dims()) == [2, 3]
    g = mckay.mckay_graph("2I")
    # no 7-dimensional irreducible exists, so S^6 splits as 4' + 3'
    assert sorted(mckay.symmetric_power_decomposition(g, 6).summands()) == ["3'", "4'"]
    assert mckay.symmetric_power_decomposition(g, 5).dims() == [6]


def test_multiplicity_free():
    g = mckay.mckay_graph("2I")
    assert all(mckay.is_multiplicity_free(g, k) for k in (0, 2, 4, 6, 8, 10))
    with pytest.raises(ValueError):
        mckay.is_multiplicity_free(g, 3)


def random_su2(rng):
    q = rng.standard_normal(4)
    q /= np.linalg.norm(q)
    a, b = complex(q[0], q[1]), complex(q[2], q[3])
    return np.array([[a, -b.conjugate()], [b, a.conjugate()]])


@pytest.mark.parametrize("k", [1, 3, 6])
def test_su2_action_homomorphism(k):
    rng = np.random.default_rng(2024)
    for _ in range(50):
        A, B = random_su2(rng), random_su2(rng)
        lhs = mckay.su2_symmetric_action(A @ B, k)
        rhs = mckay.su2_symmetric_action(A, k) @ mckay.su2_symmetric_action(B, k)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31), st.integers(0, 8))
def test_su2_action_unitary_in_weights(seed, k):
    S = mckay.su2_symmetric_action(random_su2(np.random.default_rng(seed)), k)
    # |sum c_j v0^(k-j) v1^j|^2 = sum w_j |c_j|^2
    D = np.diag(np.sqrt(mckay.monomial_weights(k)))
    U = D @ S @ np.linalg.inv(D)
    assert np.allclose(U.conj().T @ U, np.eye(k + 1), atol=1e-10)


def test_su2_action_rejects_non_unitary():
    with pytest.raises(ValueError):
        mckay.su2_symmetric_action(np.diag([2.0, 0.5]), 2)


def test_octahedral_two_dim_summand_invariant():
    basis = [mckay.polynomial_vector({(4, 0): 1, (0, 4): 1}, 4), mckay.polynomial_vector({(2, 2): 1}, 4)]
    assert mckay.verify_invariant_subspace(mckay.binary_generators("2O"), 4, basis)["invariant"]
    bad = [mckay.polynomial_vector({(4, 0): 1}, 4), mckay.polynomial_vector({(2, 2): 1}, 4)]
    assert not mckay.verify_invariant_subspace(mckay.binary_generators("2O"), 4, bad)["invariant"]


def test_polynomial_vector_degree_check():
    with pytest.raises(ValueError):
        mckay.polynomial_vector({(2, 1): 1}, 4)


def test_unknown_group():
    with pytest.raises((KeyError, ValueError)):
        mckay.mckay_graph("2X")
