import numpy as np
import pytest

from mrclab import curves, golden, pointsets
from mrclab.curves import EmbeddedPointSet, HilbertData, ParametricRational
from mrclab.errors import DegreeGuardViolated, NonInjectiveParametrization, NotVeryAmple, TooFewPoints
from mrclab.polyring import HomogeneousForm, evaluate, evaluate_many


def quintic(name):
    return ParametricRational(golden.QUINTIC_FORMS[name], name=name, regularity=4)


def test_normalize_points():
    p = 31
    pts = curves.normalize_points(np.array([[0, 2, 4], [3, 6, 9], [0, 0, 5]]), p)
    assert pts.tolist() == [[0, 1, 2], [1, 2, 3], [0, 0, 1]]


def test_point_set_validation():
    with pytest.raises(ValueError):
        EmbeddedPointSet(1, np.array([[1, 2], [1, 2]]), 31)
    with pytest.raises(ValueError):
        EmbeddedPointSet(1, np.array([[2, 1]]), 31)
    S = EmbeddedPointSet.from_coordinates([[2, 4], [1, 2], [0, 3]], 31, tag="x")
    assert len(S) == 2 and S.provenance == {"tag": "x"}


def test_hilbert_data():
    H = HilbertData(5, 0)
    assert [H(t) for t in range(5)] == [1, 6, 11, 16, 21]
    assert [HilbertData.projective_space(3)(t) for t in (-1, 0, 1, 2)] == [0, 1, 4, 10]


@pytest.mark.parametrize("p", [31, 101])
def test_quintic_points_lie_on_quadric(p):
    X = quintic("quintic_X").sample(p)
    assert len(X.points) == p + 1
    q = HomogeneousForm(3, 2, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}, p)
    assert not evaluate_many(q, X.points.points).any()
    Y = quintic("quintic_Y").sample(p)
    assert pointsets.hilbert_function(Y.points, 2) == 10


def test_pullback_of_ambient_forms_matches_direct_evaluation():
    p = 53
    C = quintic("quintic_Y")
    imgs = C.images(p)
    rng = np.random.default_rng(0)
    from mrclab.polyring import random_form
    f = random_form(3, 2, p, rng)
    for k, t in enumerate([0, 1, 5, 17]):
        u, v = 1, t
        pt = [sum(c * pow(u, 5 - e, p) * pow(v, e, p) for e, c in enumerate(form)) % p for form in C.forms]
        assert evaluate(f, pt) == evaluate(f, imgs[t])


def test_rational_normal_line():
    L = ParametricRational([[1, 0], [0, 1], [1, 1]], name="line")
    S = L.sample(5)
    assert len(S.points) == 6


def test_noninjective_parametrizations():
    with pytest.raises(NonInjectiveParametrization):
        ParametricRational([[1, 0, 0], [0, 0, 1], [1, 0, 0]]).sample(31)  # (u^2 : v^2 : u^2) is 2:1
    with pytest.raises(NonInjectiveParametrization):
        ParametricRational([[1, 1, 0], [0, 1, 1]]).sample(31)  # common factor u+v
    with pytest.raises(TooFewPoints):
        quintic("quintic_X").sample(31, min_points=40)


def test_plane_quartic_weil_and_smoothness():
    C = curves.random_plane_curve(4, 101, seed=1)
    S = C.sample(101)
    lo, hi = curves.weil_window(101, 3)
    assert lo <= len(S.points) <= hi
    assert curves.is_smooth(C, 101)
    assert S.genus == 3 and S.degree == 4 and S.regularity == 4


def test_smoothness_detects_node():
    p = 31
    nodal = HomogeneousForm(2, 3, {(0, 2, 1): 1, (3, 0, 0): -1, (2, 0, 1): -1}, p)  # y^2 z = x^3 + x^2 z
    smooth = HomogeneousForm(2, 3, {(0, 2, 1): 1, (3, 0, 0): -1, (0, 0, 3): -1}, p)
    assert not curves.is_smooth(curves.plane_curve(nodal), p)
    assert curves.is_smooth(curves.plane_curve(smooth), p)


@pytest.mark.parametrize("g,p", [(4, 31), (5, 31)])
def test_random_canonical(g, p):
    C = curves.random_canonical_curve(g, p, seed=1)
    S = C.sample(p)
    assert (S.n, S.degree, S.genus, S.regularity) == (g - 1, 2 * g - 2, g, 4)
    assert pointsets.hilbert_function(S.points, 1) == g
    again = curves.random_canonical_curve(g, p, seed=1).sample(p)
    assert np.array_equal(S.points.points, again.points.points)
    for f in C.equations:
        assert not evaluate_many(f, S.points.points).any()


def test_random_canonical_rejects_genus_3():
    with pytest.raises(ValueError):
        curves.random_canonical_curve(3, 31, seed=0)


def test_degree_guard():
    X = quintic("quintic_X").sample(31)
    assert X.max_faithful_degree() == 6
    X.check_degree(6)
    with pytest.raises(DegreeGuardViolated):
        X.check_degree(7)


def test_reembed_identity_for_canonical():
    C = curves.random_canonical_curve(4, 53, seed=2)
    S = C.sample(53)
    R = curves.reembed(C, S.points, 1)
    assert R.provenance["degree"] == 6 and R.provenance["ambient"] == 3
    assert len(R) == len(S.points)


def test_reembed_degree_and_ambient():
    C = curves.random_canonical_curve(4, 53, seed=2)
    S = C.sample(53)
    R = curves.reembed(C, S.points, 4, list(range(6)))
    assert R.provenance["degree"] == 18
    assert R.provenance["ambient"] == 18 + 1 - 4 - 1  # nonspecial: h^0 = d + 1 - g
    assert len(R) == len(S.points) - 6
    assert pointsets.hilbert_function(R, 1) == R.n + 1  # nondegenerate


def test_reembed_quartic_degree_six():
    C = curves.random_plane_curve(4, 53, seed=3)
    S = C.sample(53)
    R = curves.reembed(C, S.points, 3, list(range(6)))
    assert R.provenance["degree"] == 6 and R.provenance["ambient"] == 3


def test_quartic_2h_minus_two_points_collapses_residual_pair():
    # 2H - p - q = K + r + s with r, s the rest of the line through p, q
    C = curves.random_plane_curve(4, 53, seed=3)
    S = C.sample(53)
    with pytest.raises(NotVeryAmple):
        curves.reembed(C, S.points, 2, [0, 1])


def test_reembed_not_very_ample():
    # O(H - q) on a plane curve projects from q; a line through q meets C again
    C = curves.random_plane_curve(4, 31, seed=1)
    S = C.sample(31)
    with pytest.raises(NotVeryAmple):
        curves.reembed(C, S.points, 1, [0])


def test_reembedded_curve_regularity_unknown():
    base = curves.random_plane_curve(4, 53, seed=3).sample(53)
    R = curves.reembedded_curve(base, 2, 0, seed=0)
    assert R.regularity is None and R.degree == 8 and R.n == 5


def test_listed_curve_examples():
    p = 101
    fermat = HomogeneousForm(2, 4, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1}, p)
    assert curves.is_smooth(curves.plane_curve(fermat), p)
    nodal = HomogeneousForm(2, 3, {(0, 2, 1): 1, (3, 0, 0): -1, (2, 0, 1): -1}, p)
    assert not curves.is_smooth(curves.plane_curve(nodal), p)
    conic = HomogeneousForm(2, 2, {(2, 0, 0): 1, (0, 1, 1): -1}, p)
    assert curves.is_smooth(curves.plane_curve(conic), p)
    assert len(ParametricRational([[1, 0], [0, 1], [0, 0]]).sample(5).points) == 6
    assert len(quintic("quintic_X").sample(31).points) == 32
