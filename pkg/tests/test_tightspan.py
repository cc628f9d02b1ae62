import random
from fractions import Fraction

import pytest

from hypactions.errors import NoConvergence
from hypactions.metrics import (
    FiniteMetricSpace,
    four_point_delta,
    random_rational_metric,
    random_tree_metric,
)
from hypactions.tightspan import (
    ExtremalFunction,
    extend_isometry,
    hull_sample_delta,
    is_admissible,
    is_extremal,
    kuratowski_embed,
    minimal_below_exact,
    project_to_hull,
    sup_distance,
)

THREE_POINT = FiniteMetricSpace([[0, 2, 3], [2, 0, 4], [3, 4, 0]])
FOUR_CYCLE = FiniteMetricSpace([[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])


def test_kuratowski_examples():
    one_point = FiniteMetricSpace([[0]])
    assert kuratowski_embed(0, one_point).values == (0,)
    two_point = FiniteMetricSpace([[0, 3], [3, 0]])
    assert kuratowski_embed(0, two_point).values == (0, 3)
    for i in range(3):
        for j in range(3):
            d = sup_distance(kuratowski_embed(i, THREE_POINT), kuratowski_embed(j, THREE_POINT))
            assert d == THREE_POINT.rows[i][j]


def test_kuratowski_is_extremal():
    for i in range(3):
        ok, slack = is_extremal(kuratowski_embed(i, THREE_POINT), THREE_POINT, tol=0)
        assert ok and slack == 0


def test_is_extremal_shifted():
    # shifting by +1 moves both f and its conjugate, so the slack is 2
    f = kuratowski_embed(0, THREE_POINT)
    shifted = ExtremalFunction(tuple(v + 1 for v in f.values))
    ok, slack = is_extremal(shifted, THREE_POINT, tol=1e-9)
    assert not ok and slack == pytest.approx(2.0)


def test_tripod_center():
    # the center of the tripod spanned by a 3-point space has f(x) = (y, z)_x
    d = THREE_POINT.rows
    center = ExtremalFunction(
        (
            Fraction(d[0][1] + d[0][2] - d[1][2], 2),
            Fraction(d[1][0] + d[1][2] - d[0][2], 2),
            Fraction(d[2][0] + d[2][1] - d[0][1], 2),
        )
    )
    assert center.values == (Fraction(1, 2), Fraction(3, 2), Fraction(5, 2))
    ok, slack = is_extremal(center, THREE_POINT, tol=0)
    assert ok and slack == 0
    # all three admissibility constraints are tight at the center
    for i in range(3):
        for j in range(i + 1, 3):
            assert center[i] + center[j] == d[i][j]


def test_project_fixes_extremal_points():
    f = kuratowski_embed(1, THREE_POINT)
    out, iterations = project_to_hull(f, THREE_POINT)
    assert iterations == 0
    assert out.values == tuple(float(v) for v in f.values)


def test_project_two_point_shift():
    X = FiniteMetricSpace([[0, 3], [3, 0]])
    out, _ = project_to_hull((1.0, 4.0), X)
    assert out[0] + out[1] == pytest.approx(3.0)
    ok, _ = is_extremal(out, X)
    assert ok


def test_project_random_admissible_on_four_cycle():
    rng = random.Random(1)
    for _ in range(25):
        base = kuratowski_embed(rng.randrange(4), FOUR_CYCLE)
        start = [v + 3 * rng.random() for v in base.values]
        out, iterations = project_to_hull(start, FOUR_CYCLE, tol=1e-9, max_iter=200)
        ok, slack = is_extremal(out, FOUR_CYCLE, tol=1e-9)
        assert ok and iterations <= 200
        assert all(o <= s + 1e-12 for o, s in zip(out.values, start))


def test_project_rejects_inadmissible():
    with pytest.raises(ValueError):
        project_to_hull((0.0, 0.0), FiniteMetricSpace([[0, 3], [3, 0]]))


def test_project_no_convergence():
    # geometric convergence: three iterations cannot reach slack 1e-12
    with pytest.raises(NoConvergence):
        project_to_hull((3.0, 5.0, 4.0), THREE_POINT, tol=1e-12, max_iter=3)


def test_extremal_functions_are_one_lipschitz():
    rng = random.Random(7)
    for _ in range(10):
        X = random_rational_metric(5, rng)
        start = [float(v) + rng.random() * 2 for v in X.rows[0]]
        f, _ = project_to_hull(start, X)
        for i in range(5):
            for j in range(5):
                assert abs(f[i] - f[j]) <= float(X.rows[i][j]) + 1e-9


def test_minimal_below_exact():
    f = ExtremalFunction((Fraction(3), Fraction(5), Fraction(4)))
    out = minimal_below_exact(f, THREE_POINT)
    ok, slack = is_extremal(out, THREE_POINT, tol=0)
    assert ok and slack == 0
    assert all(o <= v for o, v in zip(out.values, f.values))
    assert is_admissible(out, THREE_POINT)
    with pytest.raises(ValueError):
        minimal_below_exact(ExtremalFunction((Fraction(0), Fraction(0), Fraction(0))), THREE_POINT)


def test_hull_sample_delta_tree_points():
    rng = random.Random(3)
    tree = random_tree_metric(7, rng)
    sample = [kuratowski_embed(i, tree) for i in range(tree.size)]
    est = hull_sample_delta(tree, sample)
    assert est.delta == 0.0


def test_hull_sample_delta_single_point():
    est = hull_sample_delta(THREE_POINT, [kuratowski_embed(0, THREE_POINT)])
    assert est.delta == 0.0


def test_hull_sample_delta_four_cycle_filling():
    sample = [kuratowski_embed(i, FOUR_CYCLE) for i in range(4)]
    center, _ = project_to_hull([1.0, 1.0, 1.0, 1.0], FOUR_CYCLE)
    est = hull_sample_delta(FOUR_CYCLE, sample + [center])
    base = four_point_delta(FOUR_CYCLE)
    assert est.delta <= base.delta + 2e-9


def test_hull_sample_delta_rejects_non_extremal():
    bad = ExtremalFunction((10.0, 10.0, 10.0))
    with pytest.raises(ValueError):
        hull_sample_delta(THREE_POINT, [bad])


def test_extend_isometry_identity_and_swap():
    f = kuratowski_embed(0, THREE_POINT)
    assert extend_isometry([0, 1, 2], f, THREE_POINT).values == f.values
    X = FiniteMetricSpace([[0, 2, 5], [2, 0, 5], [5, 5, 0]])  # points 0, 1 symmetric
    g = kuratowski_embed(0, X)
    swapped = extend_isometry([1, 0, 2], g, X)
    assert swapped.values == kuratowski_embed(1, X).values
    with pytest.raises(ValueError):
        extend_isometry([1, 0, 2], f, THREE_POINT)  # not distance-preserving


def test_extend_isometry_three_cycle_on_equilateral():
    X = FiniteMetricSpace([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    phi = [1, 2, 0]
    for x in range(3):
        moved = extend_isometry(phi, kuratowski_embed(x, X), X)
        assert moved.values == kuratowski_embed(phi[x], X).values


def test_extend_isometry_preserves_sup_distance_and_commutes():
    X = FiniteMetricSpace([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    phi = [1, 2, 0]
    f = kuratowski_embed(0, X)
    g = kuratowski_embed(1, X)
    assert sup_distance(f, g) == sup_distance(
        extend_isometry(phi, f, X), extend_isometry(phi, g, X)
    )
    start = (0.9, 0.8, 0.7)
    proj_then_move = extend_isometry(phi, project_to_hull(start, X)[0], X)
    moved_start = tuple(start[phi.index(t)] for t in range(3))
    move_then_proj = project_to_hull(moved_start, X)[0]
    assert all(
        abs(a - b) <= 2e-9 for a, b in zip(proj_then_move.values, move_then_proj.values)
    )
