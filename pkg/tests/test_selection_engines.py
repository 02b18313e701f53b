"""Engine behaviour on the worked examples plus structural postconditions."""

from fractions import Fraction

import pytest

from selectra import bodies as bd
from selectra.complex_core import (
    build_complex,
    carrier,
    product_complex,
    segment_complex,
)
from selectra.errors import (
    GapViolated,
    NotASelectionOnA,
    NotLSCRelation,
    NotIncreasing,
    NotOpenRelation,
    NotUSC,
)
from selectra.rational import NEG_INF, POS_INF
from selectra.relations import (
    ConvexCellRelation,
    IndexedCover,
    ScalarCellField,
    bounds_of,
    is_lsc_relation,
    is_open_relation,
    separation_gadget,
)
from selectra.selection_engines import (
    extend_selection,
    insert,
    lift_product,
    pou_from_cover,
    refine_c0,
    refine_countable,
    select_michael,
    select_pou,
    separate_sets,
)

F = Fraction
V0, V1, E = (0,), (1,), (0, 1)


def seg_relation(bodies3):
    K = segment_complex()
    return ConvexCellRelation(K, 1, {V0: bodies3[0], E: bodies3[1], V1: bodies3[2]})


def triangle():
    return build_complex([(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])


# ---------------------------------------------------------------------------
# pou_from_cover
# ---------------------------------------------------------------------------

def test_pou_single_member_cover():
    K = segment_complex()
    cover = IndexedCover(K, (frozenset(K.cells),))
    pou = pou_from_cover(K, cover)
    assert len(pou.members) == 1
    assert all(v == (F(1),) for i, v in enumerate(pou.members[0].values)
               if i in pou.complex.used_vertices)


def test_pou_two_member_cover_partitions():
    K = segment_complex()
    cover = IndexedCover(K, (frozenset({V0, E}), frozenset(K.cells)))
    pou = pou_from_cover(K, cover)
    xi0, xi1 = pou.members
    for i in range(1, 11):
        x = (F(i, 11),)
        s0 = xi0.evaluate(x)[0]
        s1 = xi1.evaluate(x)[0]
        assert s0 + s1 == 1
        assert 0 <= s0 <= 1
    # xi0 vanishes at v1 (outside star(v0)) and is 1 at v0
    assert xi0.evaluate((F(1),)) == (F(0),)
    assert xi0.evaluate((F(0),)) == (F(1),)


# ---------------------------------------------------------------------------
# select_pou
# ---------------------------------------------------------------------------

def test_select_pou_midpoints():
    rel = seg_relation([bd.open_interval(0, 1), bd.open_interval(-1, 2),
                        bd.open_interval(0, 1)])
    res = select_pou(rel)
    assert res.map.values[0] == (F(1, 2),) and res.map.values[1] == (F(1, 2),)
    assert res.certificate.min_margin > 0


def test_select_pou_constant_relation():
    body = bd.open_box([(0, 1), (0, 1)])
    K = segment_complex()
    rel = ConvexCellRelation(K, 2, {c: body for c in K.cells})
    res = select_pou(rel)
    assert res.map.values[0] == (F(1, 2), F(1, 2))


def test_select_pou_separation_values():
    K = segment_complex()
    rel = separation_gadget(K, [V0], [V1])
    res = select_pou(rel)
    assert res.map.values[0] == (F(-2),)
    assert res.map.values[1] == (F(2),)


def test_select_pou_requires_open():
    rel = seg_relation([bd.open_interval(0, 3), bd.open_interval(0, 1),
                        bd.open_interval(0, 1)])
    with pytest.raises(NotOpenRelation):
        select_pou(rel)


# ---------------------------------------------------------------------------
# insert
# ---------------------------------------------------------------------------

def test_insert_constant_bounds():
    K = segment_complex()
    xi = ScalarCellField(K, {c: F(0) for c in K.cells})
    eta = ScalarCellField(K, {c: F(1) for c in K.cells})
    res = insert(xi, eta)
    assert all(res.map.values[v] == (F(1, 2),) for v in K.used_vertices)


def test_insert_worked_example():
    K = segment_complex()
    xi = ScalarCellField(K, {V0: F(1), E: F(0), V1: F(0)})
    eta = ScalarCellField(K, {c: F(2) for c in K.cells})
    res = insert(xi, eta)
    assert res.map.values[0] == (F(3, 2),)
    assert res.map.values[1] == (F(1),)
    assert res.certificate.min_margin > 0


def test_insert_gap_violation():
    K = segment_complex()
    xi = ScalarCellField(K, {c: F(0) for c in K.cells})
    with pytest.raises(GapViolated):
        insert(xi, xi)


def test_insert_requires_usc():
    K = segment_complex()
    xi = ScalarCellField(K, {V0: F(0), E: F(1), V1: F(0)})   # l.s.c., not u.s.c.
    eta = ScalarCellField(K, {c: F(3) for c in K.cells})
    with pytest.raises(NotUSC):
        insert(xi, eta)


def test_insert_extended_bounds():
    K = segment_complex()
    xi = ScalarCellField(K, {c: NEG_INF for c in K.cells})
    eta = ScalarCellField(K, {c: F(5) for c in K.cells})
    res = insert(xi, eta)
    assert all(res.map.values[v] == (F(4),) for v in K.used_vertices)
    alpha = ScalarCellField(K, {c: F(2) for c in K.cells})
    top = ScalarCellField(K, {c: POS_INF for c in K.cells})
    res = insert(alpha, top)
    assert all(res.map.values[v] == (F(3),) for v in K.used_vertices)


def test_insert_round_trip_with_bounds():
    rel = seg_relation([bd.open_interval(0, 1), bd.open_interval(-1, 2),
                        bd.open_interval(0, 1)])
    xi, eta = bounds_of(rel)
    res = insert(xi, eta)
    # certificate is against from_bounds(xi, eta) == rel, so f selects rel
    for cell in rel.complex.cells:
        for vid in cell:
            assert bd.membership(rel[cell], res.map.values[vid])[0] == "inside"


# ---------------------------------------------------------------------------
# select_michael
# ---------------------------------------------------------------------------

def test_michael_singleton():
    K = segment_complex()
    rel = ConvexCellRelation(K, 1, {c: bd.closed_interval(0, 0) for c in K.cells})
    res = select_michael(rel, F(1, 64))
    assert res.certificate.max_distance <= F(1, 64)
    for v in res.map.complex.used_vertices:
        assert abs(res.map.values[v][0]) <= F(1, 64)


def test_michael_identity_selection_instance():
    rel = seg_relation([bd.closed_interval(0, 0), bd.closed_interval(0, 1),
                        bd.closed_interval(1, 1)])
    tol = F(1, 64)
    res = select_michael(rel, tol)
    assert res.certificate.max_distance <= tol
    # trace contract: |f_{n+1} - f_n| <= 2^{-n+1} exactly at every step
    for step in res.trace:
        assert step.sup_delta <= F(2) ** (-step.level + 1)
    # the exact selection x -> x witnesses the certified bound
    refined = res.map.complex
    for vid in refined.used_vertices:
        x = refined.vertices[vid][0]
        assert abs(res.map.values[vid][0] - x) <= 2 * tol


def test_michael_rejects_non_lsc():
    rel = seg_relation([bd.closed_interval(0, 2), bd.closed_interval(0, 1),
                        bd.closed_interval(0, 1)])
    with pytest.raises(NotLSCRelation) as info:
        select_michael(rel, F(1, 4))
    assert info.value.witness is not None


def test_michael_vpolytope_bodies():
    K = segment_complex()
    square = bd.v_polytope([(0, 0), (1, 0), (0, 1), (1, 1)])
    corner = bd.v_polytope([(0, 0)])
    rel = ConvexCellRelation(K, 2, {V0: corner, E: square,
                                    V1: bd.v_polytope([(1, 1)])})
    assert is_lsc_relation(rel).holds
    res = select_michael(rel, F(1, 16))
    assert res.certificate.max_distance <= F(1, 16)


# ---------------------------------------------------------------------------
# extend_selection
# ---------------------------------------------------------------------------

def test_extend_keeps_partial_values():
    rel = seg_relation([bd.open_interval(0, 1)] * 3)
    res = extend_selection(rel, [V0], {0: (F(3, 4),)})
    assert res.map.values[0] == (F(3, 4),)
    assert res.certificate.min_margin > 0


def test_extend_whole_complex_returns_g():
    rel = seg_relation([bd.open_interval(0, 1)] * 3)
    g = {0: (F(1, 4),), 1: (F(2, 3),)}
    res = extend_selection(rel, [E], g)
    assert res.map.complex == rel.complex
    assert res.map.values[0] == (F(1, 4),) and res.map.values[1] == (F(2, 3),)


def test_extend_rejects_bad_partial():
    rel = seg_relation([bd.open_interval(0, 1)] * 3)
    with pytest.raises(NotASelectionOnA):
        extend_selection(rel, [V0], {0: (F(2),)})


def test_extend_on_triangle_with_edge():
    K = triangle()
    rel = ConvexCellRelation(K, 1, {c: bd.open_interval(0, 1) for c in K.cells})
    g = {0: (F(1, 8),), 1: (F(7, 8),)}
    res = extend_selection(rel, [(0, 1)], g)
    assert res.map.values[0] == (F(1, 8),)
    assert res.map.values[1] == (F(7, 8),)
    assert res.certificate.min_margin > 0
    # restriction to |A| equals g: check at the midpoint of the edge
    mid = res.map.evaluate((F(1, 2), F(0)))
    assert mid == (F(1, 2),)


# ---------------------------------------------------------------------------
# refine_countable
# ---------------------------------------------------------------------------

def worked_cover():
    # alpha(v0)=2, alpha(e)=alpha(v1)=0 on the segment
    K = segment_complex()
    return IndexedCover(K, (frozenset({E, V1}), frozenset({E, V1}),
                            frozenset(K.cells)))


def test_refine_countable_worked_example():
    cover = worked_cover()
    res = refine_countable(cover)
    f = res.map
    # f(v0)=3, f(v1)=1 transported exactly
    assert f.evaluate((F(0),)) == (F(3),)
    assert f.evaluate((F(1),)) == (F(1),)
    # v0's refined vertex cell is only in member(2)
    refined = res.cover.complex
    v0_cell = next(c for c in refined.cells
                   if len(c) == 1 and refined.vertices[c[0]] == (F(0),))
    ks = [k for k in range(res.cover.size) if v0_cell in res.cover.members[k]]
    assert ks == [2]
    # v1 lands only in member(0)
    v1_cell = next(c for c in refined.cells
                   if len(c) == 1 and refined.vertices[c[0]] == (F(1),))
    ks = [k for k in range(res.cover.size) if v1_cell in res.cover.members[k]]
    assert ks == [0]
    assert res.order_bound <= res.guaranteed_bound == 3


def test_refine_countable_single_member():
    K = segment_complex()
    cover = IndexedCover(K, (frozenset(K.cells),))
    res = refine_countable(cover)
    assert res.cover.size == 1 and res.order_bound == 1


def test_refine_countable_rejects_non_increasing():
    K = segment_complex()
    cover = IndexedCover(K, (frozenset({V0, E}), frozenset({V1, E})))
    with pytest.raises(NotIncreasing):
        refine_countable(cover)


def test_refine_countable_is_refinement():
    cover = worked_cover()
    res = refine_countable(cover)
    refined = res.cover.complex
    base_members = [frozenset(c for c in refined.cells
                              if res.subdivision.cell_carrier[c] in m)
                    for m in cover.members]
    for k in range(cover.size):
        assert res.cover.members[k] <= base_members[k]


# ---------------------------------------------------------------------------
# refine_c0
# ---------------------------------------------------------------------------

def test_refine_c0_single_index():
    K = segment_complex()
    cover = IndexedCover(K, (frozenset(K.cells),))
    res = refine_c0(cover)
    assert res.cover.size == 1
    assert res.cover.members[0] == frozenset(res.cover.complex.cells)
    assert all(k == 0 for k in res.assignment.values())


def test_refine_c0_worked_example():
    K = segment_complex()
    cover = IndexedCover(K, (frozenset({E, V1}), frozenset({E, V1}),
                             frozenset(K.cells)))
    res = refine_c0(cover)
    f = res.map
    assert f.evaluate((F(0),)) == (F(3), F(3), F(3))
    assert f.evaluate((F(1),)) == (F(3), F(0), F(0))
    refined = res.cover.complex
    v1_vid = next(v for v in refined.used_vertices
                  if refined.vertices[v] == (F(1),))
    assert res.assignment[v1_vid] == 1
    # refinement and cover postconditions
    base_members = [frozenset(c for c in refined.cells
                              if res.subdivision.cell_carrier[c] in m)
                    for m in cover.members]
    for k in range(cover.size):
        assert res.cover.members[k] <= base_members[k]


def test_refine_c0_rejects_non_increasing():
    K = segment_complex()
    cover = IndexedCover(K, (frozenset({V0, E}), frozenset({V1, E})))
    with pytest.raises(NotIncreasing):
        refine_c0(cover)


# ---------------------------------------------------------------------------
# lift_product / separate_sets
# ---------------------------------------------------------------------------

def test_lift_constant_relation():
    K = segment_complex()
    prod = product_complex(K, K)
    rel = ConvexCellRelation(prod.complex, 1,
                             {c: bd.open_interval(0, 1) for c in prod.complex.cells})
    lifted = lift_product(prod, rel)
    assert lifted.modulus == 0
    ev = lifted.at((F(1, 3),))
    assert ev((F(1, 7),)) == (F(1, 2),)


def test_lift_evaluator_consistency():
    import random

    rnd = random.Random(11)
    K = segment_complex()
    prod = product_complex(K, K)
    bodies = {}
    for c in prod.complex.cells:
        bodies[c] = bd.open_interval(-1 - len(c), 1 + len(c))
    rel = ConvexCellRelation(prod.complex, 1, bodies)
    assert is_open_relation(rel).holds
    lifted = lift_product(prod, rel)
    for _ in range(100):
        x = (F(rnd.randint(0, 16), 16),)
        y = (F(rnd.randint(0, 16), 16),)
        assert lifted.at(x)(y) == lifted.map.evaluate(x + y)


def test_separate_sets_on_segment():
    K = segment_complex()
    res = separate_sets(K, [V0], [V1])
    assert res.map.values[0] == (F(-2),)
    assert res.map.values[1] == (F(2),)


def test_separate_sets_empty():
    K = segment_complex()
    res = separate_sets(K, [], [])
    assert all(res.map.values[v] == (F(0),) for v in K.used_vertices)


def test_separate_sets_triangle_edge():
    K = triangle()
    res = separate_sets(K, [(0,)], [(1, 2)])
    assert res.map.values[0] == (F(-2),)
    assert res.map.values[1] == (F(2),) and res.map.values[2] == (F(2),)
    assert res.certificate.min_margin > 0
