"""Seeded random instance families for property tests and acceptance runs.

Everything is driven by a ``random.Random`` instance, produces exact
rational data, and constructs valid instances *by construction* (nesting
enforced along the face order); invalid instances are valid ones with one
face/coface pair tampered by a unit-size overshoot, so violations are wide
enough for the sampling oracles to find.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Optional

from . import bodies as bd
from .complex_core import Cell, SimplicialComplex, build_complex
from .rational import NEG_INF, POS_INF
from .relations import (
    ConvexCellRelation,
    FiniteSetCellField,
    IndexedCover,
    ScalarCellField,
    is_lsc_relation,
    is_open_relation,
)

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(rnd: random.Random, lo: int, hi: int, denom: int = 8) -> Fraction:
    return Fraction(rnd.randint(lo * denom, hi * denom), denom)


# ---------------------------------------------------------------------------
# Complexes
# ---------------------------------------------------------------------------

def path_complex(length: int) -> SimplicialComplex:
    pts = [(Fraction(i),) for i in range(length + 1)]
    return build_complex(pts, [(i, i + 1) for i in range(length)])


def grid_complex(nx: int, ny: int) -> SimplicialComplex:
    """Triangulated integer grid with nx*ny squares (2 triangles each)."""
    pts = []
    index = {}
    for i in range(nx + 1):
        for j in range(ny + 1):
            index[(i, j)] = len(pts)
            pts.append((Fraction(i), Fraction(j)))
    tops = []
    for i in range(nx):
        for j in range(ny):
            a, b = index[(i, j)], index[(i + 1, j)]
            c, d = index[(i, j + 1)], index[(i + 1, j + 1)]
            tops.append((a, b, c))
            tops.append((b, c, d))
    return build_complex(pts, tops, validate_embedding=False)


def triangle_complex() -> SimplicialComplex:
    return build_complex([(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])


def tet_complex() -> SimplicialComplex:
    return build_complex([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
                         [(0, 1, 2, 3)])


def random_complex(rnd: random.Random, max_cells: int = 200) -> SimplicialComplex:
    kind = rnd.choice(["path", "path", "grid", "grid", "triangle"])
    if kind == "path":
        return path_complex(rnd.randint(2, 7))
    if kind == "triangle":
        return triangle_complex()
    nx, ny = rnd.randint(1, 4), rnd.randint(1, 3)
    K = grid_complex(nx, ny)
    while len(K.cells) > max_cells:
        nx = max(1, nx - 1)
        ny = max(1, ny - 1)
        K = grid_complex(nx, ny)
    return K


def random_dim3_complex(rnd: random.Random) -> SimplicialComplex:
    """A tetrahedron, possibly sharing a facet with a second one."""
    if rnd.random() < 0.5:
        return tet_complex()
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    return build_complex(pts, [(0, 1, 2, 3), (1, 2, 3, 4)])


# ---------------------------------------------------------------------------
# Scalar fields
# ---------------------------------------------------------------------------

def random_usc_field(rnd: random.Random, K: SimplicialComplex,
                     lo: int = -4, hi: int = 4) -> ScalarCellField:
    values = {}
    for c in sorted(K.cells, key=len, reverse=True):
        cofs = K.covering_cofaces(c)
        if cofs:
            values[c] = max(values[cof] for cof in cofs) + rational(rnd, 0, 2)
        else:
            values[c] = rational(rnd, lo, hi)
    return ScalarCellField(K, values)


def random_lsc_field(rnd: random.Random, K: SimplicialComplex,
                     lo: int = -4, hi: int = 4) -> ScalarCellField:
    values = {}
    for c in sorted(K.cells, key=len, reverse=True):
        cofs = K.covering_cofaces(c)
        if cofs:
            values[c] = min(values[cof] for cof in cofs) - rational(rnd, 0, 2)
        else:
            values[c] = rational(rnd, lo, hi)
    return ScalarCellField(K, values)


def random_usc_lsc_pair(rnd: random.Random, K: SimplicialComplex):
    """A valid strict pair xi < eta; the gap is at least 1/2 everywhere."""
    xi = random_usc_field(rnd, K)
    eta_raw = random_lsc_field(rnd, K)
    worst = max(xi[c] - eta_raw[c] for c in K.cells)
    shift = worst + Fraction(1, 2) + rational(rnd, 0, 2)
    eta = ScalarCellField(K, {c: eta_raw[c] + shift for c in K.cells})
    return xi, eta


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------

def _nested_interval_bounds(rnd: random.Random, K: SimplicialComplex):
    """Downward-nested (lo, hi) pairs around the common core (-1, 1)."""
    lo, hi = {}, {}
    for c in sorted(K.cells, key=len, reverse=True):
        cofs = K.covering_cofaces(c)
        if not cofs:
            lo[c] = -ONE - rational(rnd, 0, 3)
            hi[c] = ONE + rational(rnd, 0, 3)
        else:
            inner_lo = max(lo[cof] for cof in cofs)
            inner_hi = min(hi[cof] for cof in cofs)
            t = Fraction(rnd.randint(0, 4), 8)
            lo[c] = inner_lo + t * (-ONE - inner_lo)
            s = Fraction(rnd.randint(0, 4), 8)
            hi[c] = inner_hi + s * (ONE - inner_hi)
    return lo, hi


def _tamper_pair(rnd: random.Random, K: SimplicialComplex):
    pairs = [(c, cof) for c in K.cells for cof in K.covering_cofaces(c)]
    return pairs[rnd.randrange(len(pairs))]


def random_interval_relation(rnd: random.Random, K: SimplicialComplex,
                             open_form: bool = True,
                             valid: bool = True) -> ConvexCellRelation:
    lo, hi = _nested_interval_bounds(rnd, K)
    make = bd.open_interval if open_form else bd.closed_interval
    bodies = {c: make(lo[c], hi[c]) for c in K.cells}
    if not valid:
        face, cof = _tamper_pair(rnd, K)
        bodies[face] = make(lo[cof] - 2, hi[cof] + 2)
    return ConvexCellRelation(K, 1, bodies)


def random_box_relation(rnd: random.Random, K: SimplicialComplex,
                        open_form: bool = True,
                        valid: bool = True) -> ConvexCellRelation:
    lo1, hi1 = _nested_interval_bounds(rnd, K)
    lo2, hi2 = _nested_interval_bounds(rnd, K)
    make = bd.open_box if open_form else bd.closed_box
    bodies = {c: make([(lo1[c], hi1[c]), (lo2[c], hi2[c])]) for c in K.cells}
    if not valid:
        face, cof = _tamper_pair(rnd, K)
        bodies[face] = make([(lo1[cof] - 2, hi1[cof] + 2), (lo2[cof], hi2[cof])])
    return ConvexCellRelation(K, 2, bodies)


def random_hpolytope_relation(rnd: random.Random, K: SimplicialComplex,
                              valid: bool = True) -> ConvexCellRelation:
    """Shared normals, per-cell offsets nested downward (n = 2)."""
    normals = [(ONE, ZERO), (-ONE, ZERO), (ZERO, ONE), (ZERO, -ONE),
               (ONE, ONE)]
    offs = {}
    for c in sorted(K.cells, key=len, reverse=True):
        cofs = K.covering_cofaces(c)
        if not cofs:
            offs[c] = Fraction(2) + rational(rnd, 0, 2)
        else:
            inner = min(offs[cof] for cof in cofs)
            offs[c] = inner - Fraction(rnd.randint(0, 2), 8)
    if not valid:
        face, cof = _tamper_pair(rnd, K)
        offs[face] = offs[cof] + 2
    bodies = {}
    for c in K.cells:
        b = offs[c]
        bodies[c] = bd.h_polytope([(n, b * (2 if n == (ONE, ONE) else 1))
                                   for n in normals])
    return ConvexCellRelation(K, 2, bodies)


def random_vpolytope_relation(rnd: random.Random, K: SimplicialComplex,
                              n: int = 2, valid: bool = True) -> ConvexCellRelation:
    """Closed hulls of face-monotone point sets (l.s.c. by construction)."""
    pool = [tuple(rational(rnd, -2, 2, 4) for _ in range(n)) for _ in range(6)]
    sets = {}
    for c in sorted(K.cells, key=len):
        own = set()
        for k in range(1, len(c)):
            for f in itertools.combinations(c, k):
                own |= sets.get(f, set())
        own.add(pool[rnd.randrange(len(pool))])
        if rnd.random() < 0.4:
            own.add(pool[rnd.randrange(len(pool))])
        sets[c] = own
    bodies = {c: bd.v_polytope(sorted(sets[c])) for c in K.cells}
    if not valid:
        face, cof = _tamper_pair(rnd, K)
        far = tuple(Fraction(5) for _ in range(n))
        bodies[face] = bd.v_polytope(sorted(sets[face] | {far}))
    return ConvexCellRelation(K, n, bodies)


def random_fattened_relation(rnd: random.Random, K: SimplicialComplex,
                             n: int = 2, valid: bool = True) -> ConvexCellRelation:
    from .relations import fatten
    base = random_vpolytope_relation(rnd, K, n=n, valid=valid)
    return fatten(base, Fraction(rnd.randint(1, 4), 4), strict=True)


def random_open_relation(rnd: random.Random, K: SimplicialComplex,
                         valid: bool = True) -> ConvexCellRelation:
    kind = rnd.choice(["interval", "interval", "box", "hpoly"])
    if kind == "interval":
        rel = random_interval_relation(rnd, K, open_form=True, valid=valid)
    elif kind == "box":
        rel = random_box_relation(rnd, K, open_form=True, valid=valid)
    else:
        rel = random_hpolytope_relation(rnd, K, valid=valid)
    if valid:
        assert is_open_relation(rel).holds
    return rel


def random_closed_relation(rnd: random.Random, K: SimplicialComplex,
                           valid: bool = True) -> ConvexCellRelation:
    kind = rnd.choice(["interval", "interval", "box", "vpoly"])
    if kind == "interval":
        rel = random_interval_relation(rnd, K, open_form=False, valid=valid)
    elif kind == "box":
        rel = random_box_relation(rnd, K, open_form=False, valid=valid)
    else:
        rel = random_vpolytope_relation(rnd, K, valid=valid)
    if valid:
        assert is_lsc_relation(rel).holds
    return rel


def random_michael_relation(rnd: random.Random, K: SimplicialComplex,
                            kind: Optional[str] = None,
                            drift: Fraction = Fraction(1, 4)) -> ConvexCellRelation:
    """Mild closed l.s.c. instances: small centre drift, dimension-graded radii.

    Radii grow by ``drift`` per cell dimension while centres move at most
    ``drift``, so bodies nest along the face order.  The iteration's
    subdivision count scales with the oscillation of the start selection,
    i.e. with ``drift``; two-dimensional complexes need it below the finest
    oscillation threshold to stay at desk scale.
    """
    kind = kind or rnd.choice(["interval", "interval", "box", "vpoly"])
    centre = {v: tuple(drift * Fraction(rnd.randint(0, 2), 2) for _ in range(2))
              for v in K.used_vertices}
    if kind == "vpoly":
        pool = [(ZERO, ZERO), (drift, ZERO), (ZERO, drift), (drift, drift)]
        # face-monotone point sets: hulls nest, so the field is l.s.c.
        sets = {}
        for c in sorted(K.cells, key=len):
            own = set()
            for k in range(1, len(c)):
                for f in itertools.combinations(c, k):
                    own |= sets.get(f, set())
            own.add(pool[rnd.randrange(len(pool))])
            sets[c] = own
        rel = ConvexCellRelation(K, 2, {c: bd.v_polytope(sorted(sets[c]))
                                        for c in K.cells})
        assert is_lsc_relation(rel).holds
        return rel
    n = 1 if kind == "interval" else 2
    bodies = {}
    for c in K.cells:
        mids = [centre[v] for v in c]
        k = Fraction(len(mids))
        mid = tuple(sum(p[i] for p in mids) / k for i in range(2))[:n]
        radius = Fraction(1, 2) + drift * (len(c) - 1)
        # |centre(face) - centre(coface)| <= drift <= drift * codim: nested
        bounds = [(mid[i] - radius, mid[i] + radius) for i in range(n)]
        bodies[c] = bd.closed_box(bounds) if n == 2 else bd.closed_interval(*bounds[0])
    rel = ConvexCellRelation(K, n, bodies)
    assert is_lsc_relation(rel).holds
    return rel


# ---------------------------------------------------------------------------
# Covers, finite sets, subcomplexes
# ---------------------------------------------------------------------------

def random_increasing_cover(rnd: random.Random, K: SimplicialComplex,
                            m: Optional[int] = None) -> IndexedCover:
    m = m or rnd.randint(1, 4)
    alpha = {}
    for c in sorted(K.cells, key=len, reverse=True):
        cofs = K.covering_cofaces(c)
        pick = rnd.randint(0, m - 1)
        if cofs:
            alpha[c] = max([pick] + [alpha[cof] for cof in cofs])
        else:
            alpha[c] = pick
    members = tuple(frozenset(c for c in K.cells if alpha[c] <= k)
                    for k in range(m))
    return IndexedCover(K, members)


def random_cover(rnd: random.Random, K: SimplicialComplex,
                 m: Optional[int] = None) -> IndexedCover:
    """A not-necessarily-increasing cover built from random open stars."""
    m = m or rnd.randint(2, 4)
    members = []
    cells = list(K.cells)
    for _ in range(m - 1):
        seeds = frozenset(rnd.sample(cells, k=min(len(cells), rnd.randint(1, 3))))
        members.append(K.upward_closure(seeds))
    members.append(frozenset(K.cells))   # last member closes the cover
    return IndexedCover(K, tuple(members))


def random_finite_set_field(rnd: random.Random, K: SimplicialComplex,
                            n: int = 1) -> FiniteSetCellField:
    pool = [tuple(rational(rnd, -3, 3, 4) for _ in range(n)) for _ in range(5)]
    sets = {}
    for c in sorted(K.cells, key=len):
        own = set()
        for k in range(1, len(c)):
            for f in itertools.combinations(c, k):
                own |= sets.get(f, set())
        own.add(pool[rnd.randrange(len(pool))])
        sets[c] = own
    return FiniteSetCellField(K, n, {c: tuple(sorted(sets[c])) for c in K.cells})


def random_subcomplex(rnd: random.Random, K: SimplicialComplex) -> frozenset:
    cells = list(K.cells)
    seeds = rnd.sample(cells, k=min(len(cells), rnd.randint(1, 2)))
    return K.closure_cells(seeds)
