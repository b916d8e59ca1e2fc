from math import comb

import numpy as np
import pytest

from mrclab import curves, golden, koszul, pointsets
from mrclab.curves import EmbeddedPointSet, ParametricRational
from mrclab.errors import DegreeGuardViolated
from mrclab.koszul import BettiDiagram, KoszulComplex
from oracles import naive_betti, naive_betti_table


def random_points(n, size, p, seed):
    rng = np.random.default_rng(seed)
    raw = rng.integers(0, p, size=(size * 3, n + 1))
    raw = raw[raw.any(axis=1)]
    S = EmbeddedPointSet.from_coordinates(raw, p)
    return S.subset(np.arange(min(size, len(S))))


def test_colex_order():
    assert koszul.colex_subsets(4, 2) == ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3))
    assert koszul.colex_subsets(3, 0) == ((),)
    assert koszul.colex_subsets(3, 4) == ()


def test_degree_zero_differential_is_zero():
    S = random_points(2, 5, 31, 0)
    assert koszul.koszul_differential(S, 0, 1).shape[0] == 0


def test_differential_squares_to_zero():
    S = random_points(3, 9, 53, 4)
    for i in range(2, 5):
        for j in range(0, 4):
            A = koszul.koszul_differential(S, i, j)
            B = koszul.koszul_differential(S, i - 1, j + 1)
            assert (B @ A).is_zero()


def test_single_point():
    # one point of P^2: ideal (X1, X2) has Koszul resolution 1, 2, 1 in row 0
    S = EmbeddedPointSet.from_coordinates([[1, 0, 0]], 31)
    D = koszul.betti_diagram(S, 2)
    assert D.rows() == [[1, 2, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    P1 = EmbeddedPointSet.from_coordinates([[1, 3]], 31)
    assert koszul.betti_diagram(P1, 1).rows() == [[1, 1, 0], [0, 0, 0]]


def test_quintic_spot_values():
    X = ParametricRational(golden.QUINTIC_FORMS["quintic_X"]).sample(101)
    G = X.points.random_subset(28, np.random.default_rng(11))
    assert koszul.betti_number(G, 3, 5) == 1
    assert koszul.betti_number(G, 2, 6) == 2


def test_five_points_in_plane_against_oracle():
    S = random_points(2, 5, 31, 3)
    for i in range(4):
        for j in range(4):
            assert koszul.betti_number(S, i, j) == naive_betti(S.points.tolist(), 31, i, j)


@pytest.mark.parametrize("n,size,p,seed", [(2, 7, 31, 1), (3, 10, 53, 2), (3, 6, 31, 9)])
def test_full_tables_against_oracle(n, size, p, seed):
    S = random_points(n, size, p, seed)
    D = koszul.betti_diagram(S, 4)
    assert D.rows() == naive_betti_table(S.points.tolist(), p, 4)


@pytest.mark.parametrize("name", ["quintic_X", "quintic_Y"])
def test_curve_tables(name):
    C = ParametricRational(golden.QUINTIC_FORMS[name]).sample(101)
    D = koszul.curve_betti_diagram(C, 3)
    assert golden.matches(D, golden.CURVE_TABLES[name])


def test_line_in_plane():
    L = ParametricRational([[1, 0], [0, 1], [1, 1]]).sample(31)
    D = koszul.curve_betti_diagram(L, 2)
    assert D.rows() == [[1, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]


def test_curve_diagram_guard():
    X = ParametricRational(golden.QUINTIC_FORMS["quintic_X"]).sample(31)
    with pytest.raises(DegreeGuardViolated):
        koszul.curve_betti_diagram(X, 6)


def test_table_reproduces_hilbert_function():
    S = random_points(3, 12, 101, 6)
    D = koszul.betti_diagram(S, 5)
    for t in range(8):
        assert D.hilbert_values(t) == pointsets.hilbert_function(S, t)


def test_betti_of_vanishing_submodule_dims():
    C = curves.random_plane_curve(4, 53, seed=3).sample(53)
    M = pointsets.VanishingSubmodule(pointsets.curve_ring(C), np.arange(12))
    K = KoszulComplex(M)
    assert K.dim(1, 3) == 3 * M.dim(3)


def test_serialization_roundtrips():
    D = BettiDiagram.from_rows(golden.POINT_TABLES["quintic_X"], 2, curve="quintic_X", prime=101)
    assert BettiDiagram.from_text(D.to_text(), 2) == D
    assert BettiDiagram.from_json(D.to_json()) == D
    assert BettiDiagram.from_json(D.to_json()).provenance == {"curve": "quintic_X", "prime": 101}
    assert BettiDiagram.from_csv(D.to_csv()) == D
    assert D.to_text().splitlines()[1] == " 0 |  1 -- -- --"


def test_diagram_accessors():
    D = BettiDiagram.from_rows([[1, 0, 0], [0, 3, 2]])
    assert D[1, 1] == 3 and D[7, 0] == 0 and D[0, 9] == 0
    assert D.last_nonzero_row() == 1 and D.columns() == 3
    E = BettiDiagram.from_rows([[1, 0, 0], [0, 2, 5]])
    assert D.minimum(E).rows() == [[1, 0, 0], [0, 2, 2]]
    with pytest.raises(ValueError):
        BettiDiagram.from_rows([[-1]])
