import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mrclab import ffla
from mrclab.ffla import FieldElement, MatrixGF, PrimeModulus
from oracles import kernel_mod_p, rank_mod_p

PRIMES = [3, 5, 31, 53, 101, 173, 2_147_483_647]


def small_matrices(max_dim=7):
    return st.tuples(st.sampled_from([3, 5, 31, 101]), st.integers(0, max_dim), st.integers(0, max_dim)).flatmap(
        lambda t: st.tuples(
            st.just(t[0]),
            st.lists(st.lists(st.integers(-300, 300), min_size=t[2], max_size=t[2]), min_size=t[1], max_size=t[1]),
            st.just(t[2]),
        )
    )


def test_is_prime():
    assert [q for q in range(30) if ffla.is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert ffla.is_prime(2_147_483_647)
    assert not ffla.is_prime(2_147_483_649)


@pytest.mark.parametrize("bad", [2, 4, 1, 0, -7, 2**31 + 11])
def test_modulus_rejects(bad):
    with pytest.raises(ValueError):
        PrimeModulus(bad)


def test_field_element_arithmetic():
    F = PrimeModulus(31)
    a, b = FieldElement(7, F), FieldElement(-3, F)
    assert int(a + b) == 4
    assert int(a - b) == 10
    assert int(a * b) == (-21) % 31
    assert int((a / b) * b) == 7
    assert int(a**30) == 1
    assert a == 38
    with pytest.raises(ZeroDivisionError):
        a / FieldElement(31, F)
    with pytest.raises(ValueError):
        a + FieldElement(1, PrimeModulus(53))


def test_matrix_immutable_and_reduced():
    M = MatrixGF([[32, -1], [5, 62]], 31)
    assert M.to_list() == [[1, 30], [5, 0]]
    with pytest.raises(ValueError):
        M.entries[0, 0] = 4
    with pytest.raises(ValueError):
        M + MatrixGF([[1, 1], [1, 1]], 53)


def test_matrix_ops():
    A = MatrixGF([[1, 2], [3, 4]], 101)
    I = MatrixGF.identity(2, 101)
    assert A @ I == A
    assert (A - A).is_zero()
    assert (A @ A).to_list() == [[7, 10], [15, 22]]
    assert A.T.to_list() == [[1, 3], [2, 4]]


def test_large_prime_matmul_no_overflow():
    p = 2_147_483_647
    rng = np.random.default_rng(3)
    a = rng.integers(0, p, size=(6, 9))
    b = rng.integers(0, p, size=(9, 4))
    got = ffla.matmul_mod(a, b, p)
    want = [[sum(int(a[i, k]) * int(b[k, j]) for k in range(9)) % p for j in range(4)] for i in range(6)]
    assert got.tolist() == want


@pytest.mark.parametrize("p", PRIMES)
def test_rank_against_oracle(p):
    rng = np.random.default_rng(p)
    for _ in range(8):
        m, n, r = rng.integers(1, 9), rng.integers(1, 9), rng.integers(0, 6)
        A = ffla.random_matrix(m, r, p, rng) @ ffla.random_matrix(r, n, p, rng)
        assert ffla.rank(A) == rank_mod_p(A.to_list(), p)


def test_rank_examples():
    assert ffla.rank(MatrixGF([[1, 2], [2, 4]], 31)) == 1
    assert ffla.rank(MatrixGF([[1, 2], [3, 4]], 2_147_483_647)) == 2
    assert ffla.rank(MatrixGF([[1, 2], [3, 6 + 5]], 5)) == 1
    assert ffla.rank(MatrixGF.zeros(0, 4, 31)) == 0
    assert ffla.rank(MatrixGF.zeros(3, 0, 31)) == 0


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_properties(data):
    p, rows, ncols = data
    A = MatrixGF(rows, p, shape=(len(rows), ncols))
    r = ffla.rank(A)
    assert r == rank_mod_p(A.to_list(), p)
    assert r == ffla.rank(A.T)
    assert r <= min(A.shape)
    if A.rows:
        assert ffla.rank(ffla.vstack([A, A.scale(3)])) == r
        perm = np.random.default_rng(len(rows)).permutation(A.rows)
        assert ffla.rank(MatrixGF(A.entries[perm], p)) == r
    K = ffla.kernel_basis(A)
    assert len(K) == ncols - r
    for v in K:
        assert (A @ v).is_zero()


@settings(max_examples=40, deadline=None)
@given(small_matrices())
def test_rref_properties(data):
    p, rows, ncols = data
    A = MatrixGF(rows, p, shape=(len(rows), ncols))
    R, piv = ffla.reduced_echelon(A)
    assert len(piv) == ffla.rank(A)
    assert piv == sorted(piv)
    for k, c in enumerate(piv):
        col = R.entries[:, c]
        assert col[k] == 1 and np.count_nonzero(col) == 1
    if A.rows and ncols:
        assert ffla.in_span(R.entries[: len(piv)], piv, A.entries, p)


def test_kernel_matches_oracle_dimension():
    p = 53
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]
    K = ffla.kernel_array(np.array(rows), p)
    assert len(K) == len(kernel_mod_p(rows, 4, p)) == 2


def test_coordinates_reject_outside():
    p = 31
    R, piv = ffla.rref_array(np.array([[1, 0, 2], [0, 1, 3]]), p)
    assert ffla.coordinates(R, piv, np.array([[2, 3, 13]]), p).tolist() == [[2, 3]]
    with pytest.raises(ffla.ImageOutsideTarget):
        ffla.coordinates(R, piv, np.array([[0, 0, 1]]), p)


def test_listed_examples():
    assert ffla.rank(MatrixGF.identity(3, 7)) == 3
    assert ffla.rank(MatrixGF([[1, 2], [2, 4]], 5)) == 1
    assert ffla.kernel_basis(MatrixGF.identity(3, 7)) == []
    assert len(ffla.kernel_basis(MatrixGF.zeros(2, 3, 7))) == 3
    row = MatrixGF([[1, 1, 1]], 5)
    K = ffla.kernel_basis(row)
    assert len(K) == 2 and all((row @ v).is_zero() for v in K)
    R, piv = ffla.reduced_echelon(MatrixGF([[2, 4], [1, 2]], 5))
    assert R.to_list() == [[1, 2], [0, 0]] and piv == [0]
    I, piv = ffla.reduced_echelon(MatrixGF.identity(4, 11))
    assert I == MatrixGF.identity(4, 11) and piv == [0, 1, 2, 3]
