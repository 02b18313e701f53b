"""Complex construction, carriers, subdivision and product triangulations."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selectra.complex_core import (
    PLMap,
    barycentric_subdivide,
    build_complex,
    carrier,
    cell_id,
    constant_pl_map,
    eval_pl,
    iterate_barycentric,
    open_star,
    oscillation,
    parse_cell_id,
    pl_map_from_scalars,
    product_complex,
    segment_complex,
    subdivide_by_levels,
)
from selectra.errors import (
    DegenerateSimplex,
    OverlappingInteriors,
    PointOutsideComplex,
    UnknownCell,
)

F = Fraction


def triangle_complex():
    return build_complex([(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])


def tet_complex():
    return build_complex([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], [(0, 1, 2, 3)])


# ---------------------------------------------------------------------------
# build_complex
# ---------------------------------------------------------------------------

def test_segment_cells():
    K = segment_complex()
    assert set(K.simplices) == {(0,), (1,), (0, 1)}


def test_triangle_face_count():
    K = triangle_complex()
    assert len(K.cells) == 7  # 2^3 - 1


def test_degenerate_rejected():
    with pytest.raises(DegenerateSimplex):
        build_complex([(0,), (0,)], [(0, 1)])


def test_overlapping_interiors_rejected():
    # Two segments crossing in the middle.
    with pytest.raises(OverlappingInteriors):
        build_complex([(0, 0), (2, 2), (0, 2), (2, 0)], [(0, 1), (2, 3)])
    # A vertex sitting inside another triangle's edge.
    with pytest.raises(OverlappingInteriors):
        build_complex([(0, 0), (2, 0), (0, 2), (1, 0), (3, -1), (3, 1)],
                      [(0, 1, 2), (3, 4, 5)])


def test_shared_face_is_fine():
    K = build_complex([(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 1, 2), (1, 2, 3)])
    assert len(K.maximal_cells) == 2


def test_out_of_range_vertex():
    with pytest.raises(UnknownCell):
        build_complex([(0,), (1,)], [(0, 2)])


def test_cell_id_round_trip():
    assert cell_id((0, 12, 3)) == "0-12-3"
    assert parse_cell_id("0-12-3") == (0, 12, 3)


# ---------------------------------------------------------------------------
# faces / cofaces / stars
# ---------------------------------------------------------------------------

def test_faces_reflexive():
    K = segment_complex()
    assert K.faces_of((0, 1)) == [(0,), (0, 1), (1,)]


def test_cofaces_in_segment():
    K = segment_complex()
    assert K.cofaces_of((0,)) == [(0,), (0, 1)]
    assert K.cofaces_of((0, 1)) == [(0, 1)]


def test_open_star_upward_closed():
    K = segment_complex()
    star = open_star(K, [(0,)])
    assert star == frozenset({(0,), (0, 1)})
    assert K.is_upward_closed(star)


# ---------------------------------------------------------------------------
# carrier / eval
# ---------------------------------------------------------------------------

def test_carrier_segment_midpoint():
    K = segment_complex()
    cell, bary = carrier(K, (F(1, 2),))
    assert cell == (0, 1) and bary == (F(1, 2), F(1, 2))


def test_carrier_segment_endpoint():
    K = segment_complex()
    cell, bary = carrier(K, (F(0),))
    assert cell == (0,) and bary == (F(1),)


def test_carrier_outside():
    K = segment_complex()
    with pytest.raises(PointOutsideComplex):
        carrier(K, (F(2),))


def test_eval_pl_affine():
    K = segment_complex()
    f = pl_map_from_scalars(K, [0, 2])
    assert eval_pl(f, (F(1, 4),)) == (F(1, 2),)


def test_eval_pl_constant():
    K = triangle_complex()
    f = constant_pl_map(K, (F(5), F(-1)))
    assert eval_pl(f, (F(1, 4), F(1, 4))) == (F(5), F(-1))


def test_eval_pl_centroid_is_mean():
    # Independent oracle: value at the barycenter of an affine interpolant
    # is the arithmetic mean of the vertex values.
    K = triangle_complex()
    f = pl_map_from_scalars(K, [0, 1, 2])
    centroid = (F(1, 3), F(1, 3))
    assert eval_pl(f, centroid) == (F(1),)


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=0, max_value=1))
def test_carrier_reproduces_point(t):
    K = segment_complex()
    cell, bary = carrier(K, (t,))
    assert sum(bary) == 1 and all(b > 0 for b in bary)
    rebuilt = sum(b * K.vertices[v][0] for v, b in zip(cell, bary))
    assert rebuilt == t


# ---------------------------------------------------------------------------
# barycentric subdivision
# ---------------------------------------------------------------------------

def test_barycentric_segment():
    K = segment_complex()
    sub = barycentric_subdivide(K)
    tops = sub.refined.maximal_cells
    assert len(tops) == 2
    assert len(sub.refined.vertices) == 3


def test_barycentric_triangle_count():
    K = triangle_complex()
    sub = barycentric_subdivide(K)
    assert len(sub.refined.maximal_cells) == 6  # 3!


def test_transport_preserves_eval():
    rnd = random.Random(7)
    K = triangle_complex()
    f = PLMap(K, 2, ((F(0), F(0)), (F(1), F(3)), (F(2), F(-1))))
    sub = iterate_barycentric(K, 2)
    g = sub.transport_plmap(f)
    for _ in range(1000):
        a = F(rnd.randint(1, 50))
        b = F(rnd.randint(1, 50))
        c = F(rnd.randint(1, 50))
        s = a + b + c
        x = (a / s * 1 + c / s * 0, c / s * 1)  # random point of the triangle
        assert f.evaluate(x) == g.evaluate(x)


def test_transport_cell_values_preserves_usc():
    # usc field on the segment stays usc after carrier transport.
    from selectra.relations import ScalarCellField, classify_scalar

    K = segment_complex()
    field = ScalarCellField(K, {(0,): F(1), (1,): F(1), (0, 1): F(0)})
    sub = barycentric_subdivide(K)
    moved = ScalarCellField(sub.refined, sub.transport_cell_values(field.values))
    before = classify_scalar(field)
    after = classify_scalar(moved)
    assert before.is_usc and after.is_usc and not after.is_lsc


# ---------------------------------------------------------------------------
# level subdivision
# ---------------------------------------------------------------------------

def test_levels_segment_midpoint_cut():
    K = segment_complex()
    f = pl_map_from_scalars(K, [0, 2])
    sub = subdivide_by_levels(K, f, [F(1)])
    xs = sorted(p[0] for p in sub.refined.vertices)
    assert xs == [F(0), F(1, 2), F(1)]
    g = sub.transport_plmap(f)
    assert g.evaluate((F(1, 2),)) == (F(1),)


def test_levels_outside_range_no_change():
    K = segment_complex()
    f = pl_map_from_scalars(K, [0, 2])
    sub = subdivide_by_levels(K, f, [F(5)])
    assert sub.refined.simplices == K.simplices


def sign_pure(g, K, level):
    for c in K.cells:
        lo, hi = g.cell_value_range(c)
        if not (hi <= level or lo >= level):
            return False
    return True


def test_levels_triangle_sign_purity():
    K = triangle_complex()
    f = pl_map_from_scalars(K, [0, 1, 2])
    sub = subdivide_by_levels(K, f, [F(3, 2)])
    g = sub.transport_plmap(f)
    assert sign_pure(g, sub.refined, F(3, 2))
    # transported map agrees with the original everywhere
    assert g.evaluate((F(1, 3), F(1, 3))) == f.evaluate((F(1, 3), F(1, 3)))


def test_levels_multiple_on_triangle():
    K = triangle_complex()
    f = pl_map_from_scalars(K, [0, 1, 3])
    sub = subdivide_by_levels(K, f, [F(1), F(2)])
    g = sub.transport_plmap(f)
    for level in (F(1), F(2)):
        assert sign_pure(g, sub.refined, level)
    for c, base in sub.cell_carrier.items():
        assert set(base) <= set(range(3))


def test_levels_tetrahedron():
    K = tet_complex()
    f = pl_map_from_scalars(K, [0, 1, 2, 4])
    sub = subdivide_by_levels(K, f, [F(3, 2), F(3)])
    g = sub.transport_plmap(f)
    for level in (F(3, 2), F(3)):
        assert sign_pure(g, sub.refined, level)
    # exact transport at a handful of rational points
    for x in [(F(1, 4), F(1, 4), F(1, 4)), (F(1, 10), F(2, 10), F(3, 10))]:
        assert g.evaluate(x) == f.evaluate(x)


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def test_product_segment_segment():
    K = segment_complex()
    prod = product_complex(K, K)
    assert len(prod.complex.vertices) == 4
    assert len(prod.complex.maximal_cells) == 2


def test_product_point_times_l():
    P = build_complex([(0,)], [(0,)])
    L = triangle_complex()
    prod = product_complex(P, L)
    assert len(prod.complex.maximal_cells) == len(L.maximal_cells)


def test_product_segment_triangle_staircase():
    K = segment_complex()
    L = triangle_complex()
    prod = product_complex(K, L)
    tops = prod.complex.maximal_cells
    assert len(tops) == 3 and all(len(c) == 4 for c in tops)


def test_product_projections_reproduce_coordinates():
    K = segment_complex()
    L = segment_complex()
    prod = product_complex(K, L)
    pts = [(F(1, 3), F(1, 7)), (F(0), F(1, 2)), (F(2, 3), F(2, 3))]
    for x, y in pts:
        assert prod.proj_left.evaluate((x, y)) == (x,)
        assert prod.proj_right.evaluate((x, y)) == (y,)


# ---------------------------------------------------------------------------
# oscillation
# ---------------------------------------------------------------------------

def test_oscillation_constant_zero():
    K = segment_complex()
    f = constant_pl_map(K, (F(3),))
    assert oscillation(f, K.cells) == 0


def test_oscillation_endpoints():
    K = segment_complex()
    f = pl_map_from_scalars(K, [0, 2])
    assert oscillation(f, [(0, 1)]) == 2
