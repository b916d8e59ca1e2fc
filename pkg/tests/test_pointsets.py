from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mrclab import curves, golden, pointsets
from mrclab.curves import EmbeddedPointSet, ParametricRational
from mrclab.errors import DegreeGuardViolated
from oracles import kernel_mod_p, monomials, rank_mod_p, eval_monomial


def random_points(n, size, p, seed):
    rng = np.random.default_rng(seed)
    raw = rng.integers(0, p, size=(size * 3, n + 1))
    raw = raw[raw.any(axis=1)]
    S = EmbeddedPointSet.from_coordinates(raw, p)
    return S.subset(np.arange(min(size, len(S))))


def test_evaluation_matrix_degree_zero():
    S = random_points(2, 5, 31, 0)
    E = pointsets.evaluation_matrix(S, 0)
    assert E.to_list() == [[1]] * 5


def test_three_noncollinear_points():
    S = EmbeddedPointSet.from_coordinates([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 31)
    assert pointsets.hilbert_function(S, 1) == 3
    assert pointsets.quotient_basis(S, 0).dim == 1


def test_quintic_quadric_in_vanishing_forms():
    X = ParametricRational(golden.QUINTIC_FORMS["quintic_X"]).sample(101)
    K = pointsets.vanishing_forms(X.points, 2)
    assert K.shape[0] == 1
    q = np.zeros(10, dtype=np.int64)
    from mrclab.polyring import monomial_index
    q[monomial_index(3, 2, (1, 0, 0, 1))] = 1
    q[monomial_index(3, 2, (0, 1, 1, 0))] = 100
    assert rank_mod_p([K[0].tolist(), q.tolist()], 101) == 1


def test_quintic_hilbert_function_of_28_points():
    X = ParametricRational(golden.QUINTIC_FORMS["quintic_X"]).sample(101)
    G = X.points.random_subset(28, np.random.default_rng(5))
    assert [pointsets.hilbert_function(G, t) for t in range(7)] == [1, 4, 9, 16, 21, 26, 28]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 14), st.sampled_from([31, 53]), st.integers(0, 10**6))
def test_hilbert_function_matches_evaluation_rank(n, size, p, seed):
    S = random_points(n, size, p, seed)
    prev = 0
    for t in range(5):
        h = pointsets.hilbert_function(S, t)
        mons = monomials(n + 1, t)
        ev = [[eval_monomial(m, pt, p) for m in mons] for pt in S.points.tolist()]
        assert h == rank_mod_p(ev, p)
        assert h + len(kernel_mod_p(ev, len(mons), p)) == comb(n + t, n)
        assert prev <= h <= min(len(S), comb(n + t, n))
        prev = h
    B = pointsets.quotient_basis(S, 2)
    # closure: X_s N_j ⊆ N_{j+1}
    R = pointsets.coordinate_ring(S)
    for s in range(n + 1):
        assert pointsets.quotient_basis(S, 3).contains(R.multiply(s, B.vectors))


def test_degree_beyond_len_gives_full_space():
    S = random_points(2, 6, 101, 1)
    B = pointsets.quotient_basis(S, 6)
    assert B.dim == 6


def test_multiplication_operator():
    S = random_points(3, 8, 53, 2)
    R = pointsets.coordinate_ring(S)
    op = R.operator(2)
    v = R.basis(1).vectors
    assert np.array_equal(op.apply(v), R.multiply(2, v))
    assert np.array_equal(op.matrix().entries @ v[0] % 53, op.apply(v[:1])[0])


def test_curve_ring_guard():
    X = ParametricRational(golden.QUINTIC_FORMS["quintic_X"]).sample(31)
    R = pointsets.curve_ring(X)
    assert R.dim(6) == 31
    with pytest.raises(DegreeGuardViolated):
        R.dim(7)


def test_vanishing_submodule_dimensions():
    C = curves.random_plane_curve(4, 53, seed=3).sample(53)
    R = pointsets.curve_ring(C)
    idx = np.arange(10)
    M = pointsets.VanishingSubmodule(R, idx)
    G = C.points.subset(idx)
    for j in range(1, 8):
        assert M.dim(j) == R.dim(j) - pointsets.hilbert_function(G, j)
