"""Exact LP / linear algebra checks, cross-validated against scipy floats."""

from fractions import Fraction

import pytest

from selectra.exactlp import (
    LPResult,
    affinely_independent,
    lp_maximize,
    matrix_rank,
    solve_linear_system,
)

F = Fraction


def test_solve_square_system():
    sol = solve_linear_system([[F(2), F(1)], [F(1), F(-1)]], [F(3), F(0)])
    assert sol == [F(1), F(1)]


def test_solve_inconsistent():
    assert solve_linear_system([[F(1), F(1)], [F(2), F(2)]], [F(1), F(3)]) is None


def test_rank_and_affine_independence():
    assert matrix_rank([[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]) == 2
    assert affinely_independent([(F(0), F(0)), (F(1), F(0)), (F(0), F(1))])
    assert not affinely_independent([(F(0),), (F(0),)])
    assert not affinely_independent([(F(0), F(0)), (F(1), F(1)), (F(2), F(2))])


def test_lp_basic_box():
    # max x + y on the unit square
    res = lp_maximize([F(1), F(1)],
                      a_ub=[[F(1), F(0)], [F(0), F(1)], [F(-1), F(0)], [F(0), F(-1)]],
                      b_ub=[F(1), F(1), F(0), F(0)])
    assert res.optimal and res.value == 2
    assert res.point == (F(1), F(1))


def test_lp_equality_and_nonneg():
    # max x1 with x1 + x2 = 1, x >= 0
    res = lp_maximize([F(1), F(0)], a_eq=[[F(1), F(1)]], b_eq=[F(1)],
                      nonneg=[True, True])
    assert res.optimal and res.value == 1


def test_lp_infeasible():
    res = lp_maximize([F(1)], a_ub=[[F(1)], [F(-1)]], b_ub=[F(-1), F(-1)])
    assert res.status == "infeasible"


def test_lp_unbounded_has_ray():
    res = lp_maximize([F(1)], a_ub=[[F(-1)]], b_ub=[F(0)])
    assert res.status == "unbounded"
    assert res.ray is not None and res.ray[0] > 0


def test_lp_degenerate_cycling_guard():
    # Beale's classic cycling example; Bland's rule must terminate.
    c = [F(3, 4), F(-150), F(1, 50), F(-6)]
    a_ub = [
        [F(1, 4), F(-60), F(-1, 25), F(9)],
        [F(1, 2), F(-90), F(-1, 50), F(3)],
        [F(0), F(0), F(1), F(0)],
    ]
    b_ub = [F(0), F(0), F(1)]
    res = lp_maximize(c, a_ub=a_ub, b_ub=b_ub, nonneg=[True] * 4)
    assert res.optimal and res.value == F(1, 20)


def test_lp_matches_scipy_on_random_instances():
    scipy = pytest.importorskip("scipy.optimize")
    import random

    rnd = random.Random(20240817)
    for _ in range(25):
        n = rnd.randint(1, 3)
        m = rnd.randint(1, 5)
        c = [F(rnd.randint(-4, 4)) for _ in range(n)]
        a_ub = [[F(rnd.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
        b_ub = [F(rnd.randint(0, 6)) for _ in range(m)]
        bounds_rows = [[F(1) if j == i else F(0) for j in range(n)] for i in range(n)]
        bounds_rows += [[F(-1) if j == i else F(0) for j in range(n)] for i in range(n)]
        a_all = a_ub + bounds_rows
        b_all = b_ub + [F(10)] * (2 * n)
        res = lp_maximize(c, a_ub=a_all, b_ub=b_all)
        ref = scipy.linprog([-float(v) for v in c],
                            A_ub=[[float(v) for v in row] for row in a_all],
                            b_ub=[float(v) for v in b_all],
                            bounds=[(None, None)] * n, method="highs")
        assert res.optimal == ref.success
        if res.optimal:
            assert abs(float(res.value) + ref.fun) < 1e-7
