"""Constructive selection, insertion, extension and refinement engines.

Every engine returns an exact, self-contained certificate.  The common
soundness pattern: a PL map sends each simplex into the convex hull of its
vertex values, so strict membership (or a distance bound) checked at the
vertices of a cell, against that cell's body, certifies the same property
at every point of the cell.  Face-nested bodies (openness / l.s.c.) then
stitch the per-cell facts into a global one.

Deterministic choices throughout: interior points follow the fixed
midpoint / centroid / c+-1 / 0 rules, subdivision is global barycentric,
ties break at the smallest index or lexicographically smallest vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from . import bodies as bd
from .complex_core import (
    Cell,
    PLMap,
    Point,
    ProductComplex,
    SimplicialComplex,
    Subdivision,
    barycentric_subdivide,
    cell_id,
    identity_subdivision,
    linf,
    subdivide_by_levels,
)
from .errors import (
    GapViolated,
    InfeasibleInteriorPoint,
    NotACover,
    NotASelectionOnA,
    NotLSC,
    NotLSCRelation,
    NotOpenRelation,
    NotUSC,
    SubdivisionLimitExceeded,
    UnsupportedDim,
    UnsupportedForm,
)
from .exactlp import lp_maximize, solve_linear_system
from .rational import NEG_INF, POS_INF, ExtRat, is_finite, midpoint_rule
from .relations import (
    ConvexCellRelation,
    IndexedCover,
    ScalarCellField,
    classify_scalar,
    from_bounds,
    is_lsc_relation,
    is_open_relation,
    min_index_field,
    require_increasing,
    separation_gadget,
    transport_cover,
    transport_relation,
    transport_scalar_field,
)

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_MAX_DEPTH = 12


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SelectionCertificate:
    """Per-cell vertex evidence that a PL map selects from a relation.

    kind 'strict': every vertex value of every cell lies strictly inside the
    cell's body, with the recorded positive margin.  kind 'tolerance': every
    vertex value is within ``tolerance`` of the cell's (closed) body.  By
    convexity the vertex check certifies the whole cell.
    """

    kind: str
    tolerance: Optional[Fraction]
    vertex_evidence: Mapping   # cell -> tuple of (vertex id, margin or distance)

    @property
    def min_margin(self) -> ExtRat:
        worst: ExtRat = POS_INF
        for rows in self.vertex_evidence.values():
            for _, value in rows:
                if value < worst:
                    worst = value
        return worst

    @property
    def max_distance(self) -> Fraction:
        worst = ZERO
        for rows in self.vertex_evidence.values():
            for _, value in rows:
                if value > worst:
                    worst = value
        return worst


def certify_strict(f: PLMap, rel: ConvexCellRelation) -> SelectionCertificate:
    """Strict membership margins of f's vertex values per cell, or raise."""
    evidence = {}
    for cell in rel.complex.cells:
        rows = []
        body = rel[cell]
        for vid in cell:
            verdict, margin = bd.membership(body, f.values[vid])
            if verdict != "inside":
                raise InfeasibleInteriorPoint(
                    "value at vertex %d is not strictly inside the body of %s"
                    % (vid, cell_id(cell)))
            rows.append((vid, margin))
        evidence[cell] = tuple(rows)
    return SelectionCertificate("strict", None, evidence)


def certify_tolerance(f: PLMap, rel: ConvexCellRelation,
                      tolerance: Fraction) -> SelectionCertificate:
    """Vertexwise distance-to-body bounds, all required <= tolerance."""
    evidence = {}
    for cell in rel.complex.cells:
        rows = []
        body = rel[cell]
        for vid in cell:
            d = bd.dist_to_closure(body, f.values[vid])
            if d > tolerance:
                raise InfeasibleInteriorPoint(
                    "distance %s at vertex %d of %s exceeds tolerance"
                    % (d, vid, cell_id(cell)))
            rows.append((vid, d))
        evidence[cell] = tuple(rows)
    return SelectionCertificate("tolerance", Fraction(tolerance), evidence)


@dataclass(frozen=True)
class SelectionResult:
    map: PLMap
    certificate: SelectionCertificate


# ---------------------------------------------------------------------------
# Partition of unity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionOfUnity:
    """Hat-function sums on the barycentric subdivision, one per index."""

    complex: SimplicialComplex
    members: tuple                 # PLMap (scalar) per index
    assignment: Mapping            # refined vertex id -> index
    cover: IndexedCover            # the input cover, transported
    subdivision: Subdivision


def pou_from_cover(K: SimplicialComplex, cover: IndexedCover) -> PartitionOfUnity:
    """Partition of unity index-subordinated to the cover.

    Subdivide once barycentrically; the new vertex sitting at the barycenter
    of an old cell c goes to the smallest index whose member contains c, and
    index k's function is the sum of the hat functions of its vertices.
    Upward closure of members puts each cozero set inside its member.
    """
    if cover.complex != K:
        raise NotACover("cover lives on a different complex")
    sub = barycentric_subdivide(K)
    refined = sub.refined
    assignment = {}
    for vid in refined.used_vertices:
        source_cell = tuple(sorted(sub.vertex_weights[vid]))
        ks = cover.indices_of(source_cell)
        if not ks:
            raise NotACover("cell %s uncovered" % cell_id(source_cell), [source_cell])
        assignment[vid] = min(ks)
    members = []
    for k in range(cover.size):
        values = tuple((ONE,) if assignment.get(vid) == k else (ZERO,)
                       for vid in range(len(refined.vertices)))
        members.append(PLMap(refined, 1, values))
    return PartitionOfUnity(refined, tuple(members), assignment,
                            transport_cover(sub, cover), sub)


# ---------------------------------------------------------------------------
# POU selection (open relations)
# ---------------------------------------------------------------------------

def select_pou(rel: ConvexCellRelation) -> SelectionResult:
    """Selection of a convex-valued open relation by interior-point sampling.

    Each vertex v picks the canonical interior point of its body; the affine
    extension lands in P(cell) on every cell because vertex bodies nest into
    coface bodies.  The implicit partition of unity is the barycentric one.
    """
    verdict = is_open_relation(rel)
    if not verdict:
        raise NotOpenRelation("relation is not open", verdict.witness)
    K = rel.complex
    used = set(K.used_vertices)
    values = []
    for vid in range(len(K.vertices)):
        if vid in used:
            pt = bd.interior_point(rel[(vid,)])
            if bd.membership(rel[(vid,)], pt)[0] != "inside":
                raise InfeasibleInteriorPoint(
                    "interior-point rule failed on vertex %d" % vid)
            values.append(pt)
        else:
            values.append(tuple(ZERO for _ in range(rel.target_dim)))
    f = PLMap(K, rel.target_dim, tuple(values))
    return SelectionResult(f, certify_strict(f, rel))


# ---------------------------------------------------------------------------
# Insertion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InsertionResult:
    map: PLMap
    certificate: SelectionCertificate


def insert(xi: ScalarCellField, eta: ScalarCellField) -> InsertionResult:
    """Strict PL insertion xi < f < eta for u.s.c. xi and l.s.c. eta.

    The midpoint rule at vertices suffices: f(v) sits strictly inside
    (xi(v), eta(v)), and on a cell c the vertex values stay strictly inside
    (xi(c), eta(c)) because xi(v) >= xi(c) and eta(v) <= eta(c) along faces.
    Subdivision-free and exact.
    """
    if xi.complex != eta.complex:
        raise ValueError("fields live on different complexes")
    vx = classify_scalar(xi)
    if not vx.is_usc:
        raise NotUSC("xi is not u.s.c.", vx.usc_witness)
    ve = classify_scalar(eta)
    if not ve.is_lsc:
        raise NotLSC("eta is not l.s.c.", ve.lsc_witness)
    K = xi.complex
    for c in K.cells:
        if xi[c] >= eta[c]:
            raise GapViolated("xi >= eta on cell %s" % cell_id(c), c)
    used = set(K.used_vertices)
    values = tuple((midpoint_rule(xi[(vid,)], eta[(vid,)]),) if vid in used
                   else (ZERO,) for vid in range(len(K.vertices)))
    f = PLMap(K, 1, values)
    return InsertionResult(f, certify_strict(f, from_bounds(xi, eta)))


# ---------------------------------------------------------------------------
# Michael iteration (closed convex l.s.c. relations)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MichaelStep:
    level: int                 # the n of the step that built f_{n+1}
    rounds: int                # barycentric rounds spent before solving
    sup_delta: Fraction        # exact sup-norm of f_{n+1} - f_n


@dataclass(frozen=True)
class MichaelResult:
    map: PLMap
    certificate: SelectionCertificate
    trace: tuple
    subdivision: Subdivision
    relation: ConvexCellRelation   # the input, transported to the final complex


def _project_to_fattened(body, point: Point, slack_radius: Fraction) -> Point:
    """Canonical l-inf projection of point onto {dist(., body) <= slack_radius}."""
    if isinstance(body, bd.Box):
        out = []
        for ax, v in zip(body.axes, point):
            lo = ax.lo - slack_radius if is_finite(ax.lo) else None
            hi = ax.hi + slack_radius if is_finite(ax.hi) else None
            if lo is not None and v < lo:
                v = lo
            if hi is not None and v > hi:
                v = hi
            out.append(v)
        return tuple(out)
    if isinstance(body, bd.Fattened):
        gens = body.base.points
        reach = body.radius + slack_radius
    elif isinstance(body, bd.VPolytope):
        gens = body.points
        reach = slack_radius
    else:
        raise UnsupportedForm("michael bodies must be closed boxes or polytopes")
    n, k = len(point), len(gens)
    # vars: lambda (k, >=0), w (n free), t (>=0); y = G lambda + w
    nvars = k + n + 1
    a_ub, b_ub = [], []
    for i in range(n):
        roww = [ZERO] * nvars
        roww[k + i] = ONE
        a_ub.append(list(roww))
        b_ub.append(reach)
        roww = [ZERO] * nvars
        roww[k + i] = -ONE
        a_ub.append(list(roww))
        b_ub.append(reach)
        # |point_i - y_i| <= t
        row = [gens[j][i] for j in range(k)] + [ZERO] * n + [ZERO]
        row[k + i] = ONE
        row[-1] = -ONE
        a_ub.append(list(row))
        b_ub.append(point[i])
        row = [-gens[j][i] for j in range(k)] + [ZERO] * n + [ZERO]
        row[k + i] = -ONE
        row[-1] = -ONE
        a_ub.append(list(row))
        b_ub.append(-point[i])
    a_eq = [[ONE] * k + [ZERO] * (n + 1)]
    b_eq = [ONE]
    nonneg = [True] * k + [False] * n + [True]
    obj = [ZERO] * (k + n) + [-ONE]
    res = lp_maximize(obj, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq, nonneg=nonneg)
    assert res.optimal
    lam = res.point[:k]
    w = res.point[k:k + n]
    return tuple(sum(lam[j] * gens[j][i] for j in range(k)) + w[i] for i in range(n))


def select_michael(rel: ConvexCellRelation, tol, max_depth: int = DEFAULT_MAX_DEPTH):
    """Iterative selection of a closed-convex-valued l.s.c. relation.

    Start from a POU selection of the 1/2-fattening; at step n subdivide
    until f_n oscillates at most 2^-(n+2) on every closed vertex star, then
    move each vertex value at most 2^-(n+1) toward its body (the exact
    feasibility problem has slack 2^-(n+4); the canonical solution is the
    l-inf projection).  Stops at 2^-n <= tol with an exact distance
    certificate; the trace records the contraction sup-norms.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    for c in rel.complex.cells:
        if not bd.is_closed_form(rel[c]):
            raise UnsupportedForm("michael needs closed bodies; cell %s is not"
                                  % cell_id(c))
    verdict = is_lsc_relation(rel)
    if not verdict:
        raise NotLSCRelation("relation is not l.s.c.", verdict.witness)

    first = select_pou(_fatten_for_start(rel))
    cur_f = first.map
    cur_rel = rel
    cur_sub = identity_subdivision(rel.complex)
    rounds_total = 0
    trace = []

    n_stop = 1
    while Fraction(1, 2 ** n_stop) > tol:
        n_stop += 1

    n = 1
    while n < n_stop:
        threshold = Fraction(1, 2 ** (n + 2))
        slack = Fraction(1, 2 ** (n + 4))
        move_radius = Fraction(1, 2 ** (n + 1)) - slack
        star_bound = Fraction(1, 2 ** n) - slack
        rounds_this = 0
        while True:
            bad = _worst_star_vertex(cur_f, threshold)
            if bad is None:
                new_values, failure = _michael_vertex_solve(
                    cur_f, cur_rel, move_radius, star_bound)
                if failure is None:
                    break
                bad = failure
            if rounds_total >= max_depth:
                raise SubdivisionLimitExceeded(
                    "michael step %d cannot refine further" % n,
                    depth=rounds_total, star=bad)
            step = barycentric_subdivide(cur_f.complex)
            cur_f = step.transport_plmap(cur_f)
            cur_rel = transport_relation(step, cur_rel)
            cur_sub = cur_sub.then(step)
            rounds_total += 1
            rounds_this += 1
        next_f = PLMap(cur_f.complex, cur_f.target_dim, tuple(new_values))
        sup_delta = max((linf(a, b) for a, b in zip(next_f.values, cur_f.values)),
                        default=ZERO)
        trace.append(MichaelStep(n, rounds_this, sup_delta))
        cur_f = next_f
        n += 1

    certificate = certify_tolerance(cur_f, cur_rel, tol)
    return MichaelResult(cur_f, certificate, tuple(trace), cur_sub, cur_rel)


def _fatten_for_start(rel: ConvexCellRelation) -> ConvexCellRelation:
    from .relations import fatten
    return fatten(rel, Fraction(1, 2), strict=True)


def _worst_star_vertex(f: PLMap, threshold: Fraction):
    """First vertex whose closed-star oscillation of f exceeds the threshold."""
    K = f.complex
    for vid in K.used_vertices:
        star_vids = sorted({w for c in K.vertex_star_cells(vid) for w in c})
        for i in range(len(star_vids)):
            for j in range(i + 1, len(star_vids)):
                if linf(f.values[star_vids[i]], f.values[star_vids[j]]) > threshold:
                    return vid
    return None


def _michael_vertex_solve(f: PLMap, rel: ConvexCellRelation,
                          move_radius: Fraction, star_bound: Fraction):
    K = f.complex
    used = set(K.used_vertices)
    new_values = list(f.values)
    for vid in sorted(used):
        body = rel[(vid,)]
        fv = f.values[vid]
        if bd.dist_to_closure(body, fv) <= move_radius:
            a = fv
        else:
            a = _project_to_fattened(body, fv, move_radius)
        star_vids = sorted({w for c in K.vertex_star_cells(vid) for w in c})
        for w in star_vids:
            if linf(a, f.values[w]) > star_bound:
                return None, vid
        new_values[vid] = a
    return new_values, None


# ---------------------------------------------------------------------------
# Selection extension
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionResult:
    map: PLMap
    certificate: SelectionCertificate
    subdivision: Subdivision
    relation: ConvexCellRelation


def extend_selection(rel: ConvexCellRelation, a_cells: Sequence[Cell],
                     g_values: Mapping,
                     max_depth: int = DEFAULT_MAX_DEPTH) -> ExtensionResult:
    """Extend a partial selection g on a subcomplex A to a global selection.

    The proof's pipeline, made PL: (i) extend g over all vertices by
    breadth-first neighbour averaging; (ii) subdivide until the extension is
    a certified selection on the open star of A; (iii) one further round,
    then the PL Urysohn function of A (1 on A-vertices, 0 elsewhere);
    (iv) blend with a fresh POU selection h at the vertices:
    f(v) = eta(v)*g~(v) + (1-eta(v))*h(v).  f restricted to |A| equals g.
    """
    verdict = is_open_relation(rel)
    if not verdict:
        raise NotOpenRelation("relation is not open", verdict.witness)
    K = rel.complex
    a_closed = K.closure_cells(a_cells)
    a_vids = sorted({v for c in a_closed for v in c})
    for c in sorted(a_closed):
        for vid in c:
            if vid not in g_values:
                raise NotASelectionOnA("g undefined at vertex %d" % vid, c)
            if bd.membership(rel[c], g_values[vid])[0] != "inside":
                raise NotASelectionOnA(
                    "g is not a strict selection on cell %s" % cell_id(c), c)

    g_tilde = _bfs_average_extension(K, a_vids, g_values, rel.target_dim)

    cur_sub = identity_subdivision(K)
    cur_rel = rel
    cur_g = g_tilde
    rounds = 0
    while True:
        star = _subcomplex_star(cur_sub, a_closed)
        if _certified_on(cur_g, cur_rel, star):
            break
        if rounds >= max_depth:
            raise SubdivisionLimitExceeded("extension star never certified",
                                           depth=rounds)
        step = barycentric_subdivide(cur_g.complex)
        cur_g = step.transport_plmap(cur_g)
        cur_rel = transport_relation(step, cur_rel)
        cur_sub = cur_sub.then(step)
        rounds += 1

    refined = cur_g.complex
    a_vertex_now = {vid for vid in refined.used_vertices
                    if cur_sub.cell_carrier[_vertex_cell(cur_sub, vid)] in a_closed}
    if a_vertex_now != set(refined.used_vertices):
        # cozero of the Urysohn hat must sit inside the certified star
        step = barycentric_subdivide(refined)
        cur_g = step.transport_plmap(cur_g)
        cur_rel = transport_relation(step, cur_rel)
        cur_sub = cur_sub.then(step)
        refined = cur_g.complex
        a_vertex_now = {vid for vid in refined.used_vertices
                        if cur_sub.cell_carrier[_vertex_cell(cur_sub, vid)] in a_closed}

    h = select_pou(cur_rel).map
    values = []
    for vid in range(len(refined.vertices)):
        if vid in a_vertex_now:
            values.append(cur_g.values[vid])      # eta = 1
        else:
            values.append(h.values[vid])          # eta = 0
    f = PLMap(refined, rel.target_dim, tuple(values))
    return ExtensionResult(f, certify_strict(f, cur_rel), cur_sub, cur_rel)


def _vertex_cell(sub: Subdivision, vid: int) -> Cell:
    return (vid,)


def _bfs_average_extension(K: SimplicialComplex, seed_vids: Sequence[int],
                           seed_values: Mapping, n: int) -> PLMap:
    neighbours: dict[int, set] = {v: set() for v in K.used_vertices}
    for c in K.cells:
        if len(c) == 2:
            neighbours[c[0]].add(c[1])
            neighbours[c[1]].add(c[0])
    values: dict[int, Point] = {v: tuple(seed_values[v]) for v in seed_vids}
    frontier = sorted(values)
    while frontier:
        snapshot = dict(values)
        candidates = sorted({w for v in frontier for w in neighbours.get(v, ())
                             if w not in values})
        for w in candidates:
            known = [snapshot[u] for u in sorted(neighbours[w]) if u in snapshot]
            k = Fraction(len(known))
            values[w] = tuple(sum(p[i] for p in known) / k for i in range(n))
        frontier = candidates
    full = []
    for vid in range(len(K.vertices)):
        full.append(values.get(vid, tuple(ZERO for _ in range(n))))
    return PLMap(K, n, tuple(full))


def _subcomplex_star(sub: Subdivision, a_closed: frozenset):
    refined = sub.refined
    a_vertex_cells = [c for c in refined.cells
                      if len(c) == 1 and sub.cell_carrier[c] in a_closed]
    return refined.upward_closure(a_vertex_cells) if a_vertex_cells else frozenset()


def _certified_on(f: PLMap, rel: ConvexCellRelation, cells) -> bool:
    for cell in cells:
        body = rel[cell]
        for vid in cell:
            if bd.membership(body, f.values[vid])[0] != "inside":
                return False
    return True


# ---------------------------------------------------------------------------
# Refinements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CountableRefinement:
    cover: IndexedCover            # phi, on the refined complex
    order_bound: int               # attained max membership count
    guaranteed_bound: int          # ceil(max f) over the complex
    map: PLMap                     # the inserted function, transported
    subdivision: Subdivision


def refine_countable(cover: IndexedCover) -> CountableRefinement:
    """Order-bounded indexed refinement of an increasing cover.

    Insert f strictly above the min-index field alpha (so f = alpha + 1 at
    vertices), cut the complex at integer levels of f, and keep in phi(k)
    the cells where alpha <= k and f > k on the open cell.  Memberwise
    containment in the input cover follows from alpha <= k; covering is the
    pointwise identity phi(x) = {k : alpha(x) <= k < f(x)}.
    """
    require_increasing(cover)
    K = cover.complex
    alpha = min_index_field(cover)
    eta = ScalarCellField(K, {c: POS_INF for c in K.cells})
    ins = insert(alpha, eta)
    f = ins.map
    f_max = max(f.values[v][0] for v in K.used_vertices)
    f_min = min(f.values[v][0] for v in K.used_vertices)
    levels = [Fraction(k) for k in range(int(f_min), int(f_max) + 1)]
    sub = subdivide_by_levels(K, f, levels)
    f_ref = sub.transport_plmap(f)
    alpha_ref = transport_scalar_field(sub, alpha)
    members = []
    for k in range(cover.size):
        kk = Fraction(k)
        member = frozenset(
            c for c in sub.refined.cells
            if alpha_ref[c] <= kk and _strictly_above_on_open_cell(f_ref, c, kk))
        members.append(member)
    phi = IndexedCover(sub.refined, tuple(members))
    guaranteed = int(f_max) + (0 if f_max == int(f_max) else 1)
    return CountableRefinement(phi, phi.order, guaranteed, f_ref, sub)


def _strictly_above_on_open_cell(f: PLMap, cell: Cell, level: Fraction) -> bool:
    lo, hi = f.cell_value_range(cell)
    return lo >= level and hi > level


@dataclass(frozen=True)
class C0Refinement:
    cover: IndexedCover
    map: PLMap
    assignment: Mapping            # refined vertex id -> assigned index
    subdivision: Subdivision


def refine_c0(cover: IndexedCover,
              max_depth: int = DEFAULT_MAX_DEPTH) -> C0Refinement:
    """Refinement extraction through the coordinate-threshold selection.

    Build the open box relation {y in Q^m : y_k > 2 for k <= alpha(x)},
    select it (vertex values are exactly (3,..,3,0,..,0)), subdivide until
    the selection oscillates at most 1 on closed vertex stars, and assign
    each vertex star the smallest coordinate below 1 at its centre.  If a
    star escaped its member, the escape point's alpha would force that
    coordinate above 2 there, contradicting the oscillation bound; vertices
    with no small coordinate fall back to the top index, whose member is
    everything.
    """
    require_increasing(cover)
    K = cover.complex
    m = cover.size
    alpha = min_index_field(cover)
    boxes = {}
    for c in K.cells:
        a = int(alpha[c])
        axes = []
        for k in range(m):
            if k <= a:
                axes.append(bd.AxisInterval(Fraction(2), POS_INF, True, True))
            else:
                axes.append(bd.AxisInterval(NEG_INF, POS_INF, True, True))
        boxes[c] = bd.Box(tuple(axes))
    rel = ConvexCellRelation(K, m, boxes)
    sel = select_pou(rel)
    for vid in K.used_vertices:
        a = int(alpha[(vid,)])
        expected = tuple(Fraction(3) if k <= a else ZERO for k in range(m))
        assert sel.map.values[vid] == expected

    cur_f = sel.map
    cur_sub = identity_subdivision(K)
    rounds = 0
    while True:
        bad = _worst_star_vertex(cur_f, ONE)
        if bad is None:
            break
        if rounds >= max_depth:
            raise SubdivisionLimitExceeded("oscillation never below 1",
                                           depth=rounds, star=bad)
        step = barycentric_subdivide(cur_f.complex)
        cur_f = step.transport_plmap(cur_f)
        cur_sub = cur_sub.then(step)
        rounds += 1

    refined = cur_sub.refined
    cover_ref = transport_cover(cur_sub, cover)
    assignment = {}
    star_members: list[set] = [set() for _ in range(m)]
    for vid in refined.used_vertices:
        fv = cur_f.values[vid]
        small = [k for k in range(m) if abs(fv[k]) < 1]
        k = min(small) if small else m - 1
        assignment[vid] = k
        star_members[k].update(refined.upward_closure([(vid,)]))
    members = tuple(frozenset(s) for s in star_members)
    phi = IndexedCover(refined, members)
    for k in range(m):
        assert members[k] <= cover_ref.members[k], "escape argument violated"
    return C0Refinement(phi, cur_f, assignment, cur_sub)


# ---------------------------------------------------------------------------
# Product lifting and separation
# ---------------------------------------------------------------------------

class CurriedEvaluator:
    """The function y -> g(x, y) for a fixed x, evaluated exactly."""

    def __init__(self, g: PLMap, x: Point):
        self._g = g
        self._x = tuple(Fraction(c) for c in x)

    def __call__(self, y: Sequence) -> Point:
        pt = self._x + tuple(Fraction(c) for c in y)
        return self._g.evaluate(pt)


@dataclass(frozen=True)
class CurriedSelection:
    """A product selection with its curried evaluator and sup-norm modulus.

    ``modulus`` is the exact global Lipschitz constant of g in the first
    factor's directions (max over top simplices), so
    sup_y |g(x,y) - g(x',y)| <= modulus * |x - x'| along segments in |K|.
    """

    product: ProductComplex
    map: PLMap
    certificate: SelectionCertificate
    modulus: Fraction

    def at(self, x: Sequence) -> CurriedEvaluator:
        return CurriedEvaluator(self.map, tuple(Fraction(c) for c in x))


def lift_product(prod: ProductComplex, rel: ConvexCellRelation) -> CurriedSelection:
    """Select a convex-valued open relation on K x L and curry the result."""
    if rel.complex != prod.complex:
        raise ValueError("relation does not live on the product complex")
    sel = select_pou(rel)
    modulus = _x_lipschitz(prod, sel.map)
    return CurriedSelection(prod, sel.map, sel.certificate, modulus)


def _x_lipschitz(prod: ProductComplex, g: PLMap) -> Fraction:
    K = prod.complex
    full = K.dim_ambient
    split = prod.split
    worst = ZERO
    for top in K.maximal_cells:
        if len(top) - 1 != full:
            raise UnsupportedDim("modulus needs full-dimensional product cells")
        pts = K.cell_points(top)
        base = pts[0]
        matrix = [[pts[i + 1][j] - base[j] for j in range(full)] for i in range(full)]
        for t in range(g.target_dim):
            rhs = [g.values[top[i + 1]][t] - g.values[top[0]][t] for i in range(full)]
            grad = solve_linear_system(matrix, rhs)
            assert grad is not None
            row_sum = sum(abs(grad[j]) for j in range(split))
            if row_sum > worst:
                worst = row_sum
    return worst


@dataclass(frozen=True)
class SeparationResult:
    map: PLMap
    certificate: SelectionCertificate
    relation: ConvexCellRelation


def separate_sets(K: SimplicialComplex, a_cells: Sequence[Cell],
                  b_cells: Sequence[Cell]) -> SeparationResult:
    """PL function certified <= -1 on A and >= 1 on B (Urysohn via selection)."""
    rel = separation_gadget(K, a_cells, b_cells)
    sel = select_pou(rel)
    return SeparationResult(sel.map, sel.certificate, rel)
