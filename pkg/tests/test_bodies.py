"""Convex body forms: membership, distance, support, containment, closure."""

from fractions import Fraction

import pytest

from selectra import bodies as bd
from selectra.errors import EnumerationOverflow, UnsupportedForm
from selectra.rational import NEG_INF, POS_INF

F = Fraction


def square_h():
    # open unit square as strict halfspaces
    return bd.h_polytope([((F(1), F(0)), F(1)), ((F(-1), F(0)), F(0)),
                          ((F(0), F(1)), F(1)), ((F(0), F(-1)), F(0))])


def test_open_interval_membership():
    b = bd.open_interval(0, 1)
    assert bd.membership(b, (F(1, 2),)) == ("inside", F(1, 2))
    assert bd.membership(b, (F(0),))[0] == "outside"
    assert bd.membership(b, (F(2),))[0] == "outside"


def test_closed_interval_boundary():
    b = bd.closed_interval(0, 1)
    assert bd.membership(b, (F(0),))[0] == "boundary"
    assert bd.membership(b, (F(1, 2),))[0] == "inside"


def test_fattened_point_strict_outside_at_radius():
    base = bd.v_polytope([(0,)])
    fat = bd.fatten_body(base, F(1), strict=True)
    assert bd.membership(fat, (F(1),))[0] == "outside"
    assert bd.membership(fat, (F(1, 2),)) == ("inside", F(1, 2))
    closed_fat = bd.fatten_body(base, F(1), strict=False)
    assert bd.membership(closed_fat, (F(1),))[0] == "boundary"


def test_fatten_interval_closed_form():
    assert bd.fatten_body(bd.v_polytope([(0,)]), 1, True) == bd.Fattened(
        bd.v_polytope([(0,)]), F(1), True)
    box = bd.closed_box([(0, 1), (0, 1)])
    fat = bd.fatten_body(box, F(1, 2), strict=True)
    assert fat == bd.open_box([(F(-1, 2), F(3, 2)), (F(-1, 2), F(3, 2))])


def test_fatten_hpolytope_unsupported():
    with pytest.raises(UnsupportedForm):
        bd.fatten_body(square_h(), F(1), True)
    with pytest.raises(UnsupportedForm):
        fat = bd.fatten_body(bd.v_polytope([(0,)]), 1, True)
        bd.fatten_body(fat, F(1), True)


def test_hpolytope_requires_full_dimension():
    with pytest.raises(UnsupportedForm):
        bd.h_polytope([((F(1),), F(0)), ((F(-1),), F(0))])  # empty
    with pytest.raises(UnsupportedForm):
        # slab of zero width in the plane
        bd.h_polytope([((F(1), F(0)), F(0)), ((F(-1), F(0)), F(0))])


def test_hpolytope_vertices_unit_square():
    verts = bd.hpolytope_vertices(square_h())
    assert verts == [(F(0), F(0)), (F(0), F(1)), (F(1), F(0)), (F(1), F(1))]


def test_closure_forms():
    assert bd.closure(bd.open_interval(0, 1)) == bd.closed_interval(0, 1)
    assert bd.closure(bd.closed_interval(0, 1)) == bd.closed_interval(0, 1)
    vp = bd.closure(square_h())
    assert isinstance(vp, bd.VPolytope) and len(vp.points) == 4
    fat = bd.Fattened(bd.v_polytope([(0,)]), F(1), True)
    assert bd.closure(fat).strict is False
    assert bd.closure(bd.closure(fat)) == bd.closure(fat)


def test_closure_unbounded_hpolytope_overflows():
    half = bd.h_polytope([((F(1),), F(0))])   # y < 0, unbounded below
    with pytest.raises(EnumerationOverflow):
        bd.closure(half)


def test_interior_points():
    assert bd.interior_point(bd.open_interval(0, 1)) == (F(1, 2),)
    assert bd.interior_point(bd.open_interval(1, POS_INF)) == (F(2),)
    assert bd.interior_point(bd.open_interval(NEG_INF, -1)) == (F(-2),)
    assert bd.interior_point(bd.whole_line()) == (F(0),)
    assert bd.interior_point(bd.v_polytope([(0, 0), (1, 0), (0, 1)])) == (F(1, 3), F(1, 3))
    y = bd.interior_point(square_h())
    assert bd.membership(square_h(), y)[0] == "inside"


def test_dist_to_closure():
    assert bd.dist_to_closure(bd.closed_interval(0, 1), (F(3, 2),)) == F(1, 2)
    assert bd.dist_to_closure(bd.closed_interval(0, 1), (F(1, 2),)) == 0
    tri = bd.v_polytope([(0, 0), (1, 0), (0, 1)])
    assert bd.dist_to_closure(tri, (F(2), F(0))) == 1
    assert bd.dist_to_closure(square_h(), (F(2), F(1, 2))) == 1
    fat = bd.Fattened(bd.v_polytope([(0,)]), F(1), True)
    assert bd.dist_to_closure(fat, (F(3),)) == 2


def test_sup_support():
    assert bd.sup_support(bd.open_interval(0, 1), (F(1),)) == 1
    assert bd.sup_support(bd.open_interval(0, POS_INF), (F(1),)) == POS_INF
    assert bd.sup_support(bd.open_interval(0, POS_INF), (F(-1),)) == 0
    tri = bd.v_polytope([(0, 0), (2, 0), (0, 2)])
    assert bd.sup_support(tri, (F(1), F(1))) == 2
    fat = bd.Fattened(tri, F(1, 2), True)
    assert bd.sup_support(fat, (F(1), F(1))) == 3


def test_closure_contains_intervals():
    ok, _ = bd.closure_contains(bd.open_interval(-1, 2), bd.open_interval(0, 1))
    assert ok
    ok, w = bd.closure_contains(bd.open_interval(0, 1), bd.open_interval(0, 3))
    assert not ok and w is not None and w[0] > 1


def test_closure_contains_mixed_forms():
    tri = bd.v_polytope([(0, 0), (1, 0), (0, 1)])
    big = bd.closed_box([(-1, 2), (-1, 2)])
    ok, _ = bd.closure_contains(big, tri)
    assert ok
    ok, w = bd.closure_contains(tri, big)
    assert not ok and bd.dist_to_closure(tri, w) > 0
    # unbounded inner vs bounded outer
    ok, w = bd.closure_contains(tri, bd.open_interval(0, POS_INF))
    assert not ok


def test_closure_contains_fattened_equal_radii():
    a = bd.Fattened(bd.v_polytope([(0, 0)]), F(1), True)
    b = bd.Fattened(bd.v_polytope([(0, 0), (1, 0)]), F(1), True)
    ok, _ = bd.closure_contains(b, a)
    assert ok
    ok, w = bd.closure_contains(a, b)
    assert not ok


def test_open_and_closed_form_flags():
    assert bd.is_open_form(bd.open_interval(0, 1))
    assert not bd.is_open_form(bd.closed_interval(0, 1))
    assert bd.is_open_form(square_h())
    assert bd.is_closed_form(bd.v_polytope([(0,)]))
    assert bd.is_open_form(bd.Fattened(bd.v_polytope([(0,)]), F(1), True))
    assert bd.is_closed_form(bd.Fattened(bd.v_polytope([(0,)]), F(1), False))
    assert bd.is_open_form(bd.whole_line())
    assert bd.is_closed_form(bd.whole_line())


def test_vpolytope_limits():
    with pytest.raises(EnumerationOverflow):
        bd.v_polytope([(i,) for i in range(40)])
    with pytest.raises(UnsupportedForm):
        bd.v_polytope([(0, 0, 0, 0)])


def test_lower_dimensional_vpolytope_membership():
    seg = bd.v_polytope([(0, 0), (1, 1)])
    assert bd.membership(seg, (F(1, 2), F(1, 2)))[0] == "boundary"
    assert bd.membership(seg, (F(1, 2), F(0)))[0] == "outside"
