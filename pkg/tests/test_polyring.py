from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mrclab import polyring
from mrclab.polyring import HomogeneousForm, Monomial
from oracles import monomials, naive_eval


@pytest.mark.parametrize("n,t", [(1, 0), (1, 5), (2, 4), (3, 3), (4, 2), (6, 3)])
def test_counts_and_order(n, t):
    basis = polyring.monomial_basis(n, t)
    assert len(basis) == comb(n + t, n) == polyring.num_monomials(n, t)
    assert [m.exponents for m in basis] == monomials(n + 1, t)
    assert len(set(basis)) == len(basis)


def test_first_monomial_and_index():
    assert polyring.monomial_basis(3, 2)[0].exponents == (2, 0, 0, 0)
    assert polyring.monomial_index(3, 2, (0, 0, 0, 2)) == comb(5, 3) - 1
    assert str(Monomial((2, 0, 1))) == "X0^2*X2"


def test_quadric_vanishes_on_quintic_points():
    p = 101
    q = HomogeneousForm(3, 2, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}, p)
    for u, v in [(1, 0), (0, 1), (3, 7), (50, 2)]:
        pt = [pow(u, 5, p), pow(u, 4, p) * v % p, u * pow(v, 4, p) % p, pow(v, 5, p)]
        assert polyring.evaluate(q, pt) == 0


def test_form_arithmetic():
    p = 31
    x0, x1 = (HomogeneousForm.variable(2, k, p) for k in (0, 1))
    f = x0 * x0 - x1 * x1
    g = (x0 - x1) * (x0 + x1)
    assert f == g
    assert (f - g).is_zero()
    with pytest.raises(ValueError):
        x0 + f
    with pytest.raises(ValueError):
        HomogeneousForm(2, 2, {(1, 0, 0): 1}, p)


forms = st.tuples(st.sampled_from([31, 101]), st.integers(1, 3), st.integers(1, 4), st.integers(0, 2**32))


@settings(max_examples=40, deadline=None)
@given(forms)
def test_evaluation_properties(data):
    p, n, d, seed = data
    rng = np.random.default_rng(seed)
    f = polyring.random_form(n, d, p, rng)
    g = polyring.random_form(n, 2, p, rng)
    pts = rng.integers(0, p, size=(6, n + 1))
    many = polyring.evaluate_many(f, pts)
    for pt, val in zip(pts, many):
        assert val == polyring.evaluate(f, pt) == naive_eval(f.terms, pt, p)
        lam = int(rng.integers(1, p))
        assert polyring.evaluate(f, (lam * pt) % p) == pow(lam, d, p) * val % p
        assert polyring.evaluate(f * g, pt) == val * polyring.evaluate(g, pt) % p
        # Euler: sum x_k ∂f/∂x_k = d f
        euler = sum(int(x) * polyring.evaluate(df, pt) for x, df in zip(pt, polyring.partials(f))) % p
        assert euler == d * val % p
    assert polyring.HomogeneousForm.from_vector(n, d, f.to_vector(), p) == f


def test_power_table_and_monomial_values():
    p = 53
    pts = np.array([[2, 3, 5], [0, 1, 7]])
    exps = polyring.monomial_exponents(2, 3)
    vals = polyring.evaluate_monomials(exps, pts, p)
    for r, pt in enumerate(pts):
        for c, e in enumerate(exps.tolist()):
            assert vals[r, c] == naive_eval({tuple(e): 1}, pt, p)


def test_listed_examples():
    assert len(polyring.monomial_basis(0, 5)) == 1
    p = 7
    x0 = HomogeneousForm.variable(3, 0, p)
    assert polyring.evaluate(HomogeneousForm.variable(2, 0, p), (1, 0, 0)) == 1
    assert polyring.partials(x0 * x0) == [x0.__mul__(2)] + [HomogeneousForm(3, 1, {}, p)] * 3
    x1 = HomogeneousForm.variable(3, 1, p)
    assert polyring.partials(x0 * x1)[:2] == [x1, x0]
