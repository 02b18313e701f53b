"""Cellwise-constant set-valued relations on a complex and their classifiers.

A relation assigns one convex body P(c) to every cell c; its value at a
point x of |K| is P(carrier(x)).  For such fields the topological
properties become finite face-lattice conditions, checked exactly:

* open relation      <=>  bodies in open form and P(face) <= P(coface);
* l.s.c. relation    <=>  P(face) <= cl(P(coface));
* scalar u.s.c.      <=>  value(face) >= value(coface), l.s.c. dually.

Both relation criteria reduce to the same closure inclusion (which is why,
on open-interval-valued fields, l.s.c. and openness coincide).  Two remarks
on deliberately absent machinery: the metric refinement "rho-l.s.c." of the
l.s.c. notion collapses, for cellwise-constant fields, to the same closure
criterion, so no separate classifier exists; and local finiteness versus
point-finiteness of covers is vacuous on finite complexes, so covers expose
their order (max per-cell membership count) instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from . import bodies as bd
from .bodies import Body, Box, Fattened, HPolytope, VPolytope
from .complex_core import (
    Cell,
    Point,
    SimplicialComplex,
    Subdivision,
    cell_id,
)
from .errors import (
    EmptyInterval,
    NonConvexUnion,
    NotACover,
    NotDisjoint,
    NotIncreasing,
    NotOpenForm,
    UnsupportedForm,
)
from .rational import NEG_INF, POS_INF, ExtRat, is_finite

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Field types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalarCellField:
    """One extended rational per cell; the function x -> value(carrier(x))."""

    complex: SimplicialComplex
    values: Mapping

    def __post_init__(self):
        missing = [c for c in self.complex.cells if c not in self.values]
        if missing:
            raise ValueError("missing scalar values on %s" % (missing[:3],))

    @property
    def extended(self) -> bool:
        return any(not is_finite(v) for v in self.values.values())

    def __getitem__(self, cell: Cell) -> ExtRat:
        return self.values[cell]


@dataclass(frozen=True)
class ConvexCellRelation:
    """One convex body per cell: the graph {(x, y): y in P(carrier(x))}."""

    complex: SimplicialComplex
    target_dim: int
    bodies: Mapping

    def __post_init__(self):
        for c in self.complex.cells:
            b = self.bodies.get(c)
            if b is None:
                raise ValueError("missing body on cell %s" % cell_id(c))
            if bd.body_dim(b) != self.target_dim:
                raise ValueError("body dimension mismatch on cell %s" % cell_id(c))

    def __getitem__(self, cell: Cell) -> Body:
        return self.bodies[cell]


@dataclass(frozen=True)
class IndexedCover:
    """Finitely many upward-closed cell sets, jointly covering the complex."""

    complex: SimplicialComplex
    members: tuple

    def __post_init__(self):
        covered = set()
        for i, member in enumerate(self.members):
            if not self.complex.is_upward_closed(member):
                raise ValueError("cover member %d is not upward-closed" % i)
            covered |= set(member)
        missing = set(self.complex.cells) - covered
        if missing:
            raise NotACover("cover misses cells", sorted(missing))

    @property
    def size(self) -> int:
        return len(self.members)

    def indices_of(self, cell: Cell) -> list[int]:
        return [k for k, member in enumerate(self.members) if cell in member]

    @cached_property
    def order(self) -> int:
        """Max per-cell membership count (the point-finiteness statistic)."""
        return max(len(self.indices_of(c)) for c in self.complex.cells)


@dataclass(frozen=True)
class FiniteSetCellField:
    """A nonempty finite subset of Q^n per cell."""

    complex: SimplicialComplex
    target_dim: int
    values: Mapping

    def __post_init__(self):
        for c in self.complex.cells:
            pts = self.values.get(c)
            if not pts:
                raise ValueError("missing finite set on cell %s" % cell_id(c))


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalarVerdict:
    is_usc: bool
    is_lsc: bool
    usc_witness: Optional[tuple] = None   # (face, coface)
    lsc_witness: Optional[tuple] = None


@dataclass(frozen=True)
class RelationWitness:
    face: Cell
    coface: Cell
    point: Point

    def to_json(self):
        from .rational import format_scalar
        return {"face": cell_id(self.face), "coface": cell_id(self.coface),
                "point": [format_scalar(c) for c in self.point]}


@dataclass(frozen=True)
class RelationVerdict:
    holds: bool
    witness: Optional[RelationWitness] = None

    def __bool__(self) -> bool:
        return self.holds


# ---------------------------------------------------------------------------
# Classifiers
# ---------------------------------------------------------------------------

def classify_scalar(field: ScalarCellField) -> ScalarVerdict:
    """Exact u.s.c./l.s.c. verdicts via the face-monotonicity criterion."""
    usc_w = lsc_w = None
    K = field.complex
    for face in K.cells:
        for coface in K.covering_cofaces(face):
            if usc_w is None and field[face] < field[coface]:
                usc_w = (face, coface)
            if lsc_w is None and field[face] > field[coface]:
                lsc_w = (face, coface)
        if usc_w and lsc_w:
            break
    return ScalarVerdict(usc_w is None, lsc_w is None, usc_w, lsc_w)


def _strict_point_in(body: Body, closure_point: Point,
                     other_closed: Body) -> Point:
    """Move a closure point of ``body`` inside it, staying out of cl(other)."""
    verdict, _ = bd.membership(body, closure_point)
    if verdict != "outside":
        return closure_point
    anchor = bd.interior_point(body)
    gap = bd.dist_to_closure(other_closed, closure_point)
    assert gap > 0
    span = max((abs(a - w) for a, w in zip(anchor, closure_point)), default=ZERO)
    t = min(Fraction(1, 2), gap / (2 * span)) if span > 0 else Fraction(1, 2)
    return tuple((1 - t) * w + t * a for w, a in zip(closure_point, anchor))


def _face_inclusions(rel: ConvexCellRelation) -> RelationVerdict:
    K = rel.complex
    for face in K.cells:
        for coface in K.covering_cofaces(face):
            ok, closure_witness = bd.closure_contains(rel[coface], rel[face])
            if not ok:
                point = _strict_point_in(rel[face], closure_witness, rel[coface])
                assert bd.in_body(rel[face], point)
                assert not bd.in_body(rel[coface], point)
                return RelationVerdict(False, RelationWitness(face, coface, point))
    return RelationVerdict(True)


def is_open_relation(rel: ConvexCellRelation) -> RelationVerdict:
    """Openness of the graph in |K| x Q^n, certified or refuted exactly.

    Requires every body in open form; the criterion is then the nested
    face-to-coface inclusion of bodies.
    """
    for c in rel.complex.cells:
        if not bd.is_open_form(rel[c]):
            raise NotOpenForm("cell %s carries a non-open body" % cell_id(c))
    return _face_inclusions(rel)


def is_lsc_relation(rel: ConvexCellRelation) -> RelationVerdict:
    """Lower semicontinuity: each body inside the closure of its cofaces'."""
    return _face_inclusions(rel)


def is_increasing_cover(cover: IndexedCover) -> bool:
    return all(set(cover.members[k]) <= set(cover.members[k + 1])
               for k in range(cover.size - 1))


def require_increasing(cover: IndexedCover) -> None:
    if not is_increasing_cover(cover):
        raise NotIncreasing("cover members are not nested along the index order")


def min_index_field(cover: IndexedCover) -> ScalarCellField:
    """The field alpha(c) = min{k: c in member(k)}; u.s.c. by upward closure."""
    values = {}
    for c in cover.complex.cells:
        ks = cover.indices_of(c)
        if not ks:
            raise NotACover("cell %s uncovered" % cell_id(c), [c])
        values[c] = Fraction(min(ks))
    return ScalarCellField(cover.complex, values)


# ---------------------------------------------------------------------------
# Relation algebra
# ---------------------------------------------------------------------------

def _interval_data(body: Body):
    if isinstance(body, Box) and len(body.axes) == 1:
        ax = body.axes[0]
        return ax.lo, ax.hi, ax.lo_strict, ax.hi_strict
    raise UnsupportedForm("interval-valued relation required")


def _union_of_intervals(parts: list) -> Body:
    def lo_key(p):
        lo, _, lo_s, _ = p
        return (is_finite(lo), lo if is_finite(lo) else ZERO, lo_s)

    parts = sorted(parts, key=lo_key)
    lo, hi, lo_s, hi_s = parts[0]
    for nlo, nhi, nlo_s, nhi_s in parts[1:]:
        # connectivity: the next interval must start inside the current union
        if nlo > hi or (nlo == hi and nlo_s and hi_s):
            raise NonConvexUnion("interval union is disconnected")
        if nhi > hi or (nhi == hi and hi_s and not nhi_s):
            hi, hi_s = nhi, nhi_s
    return bd.interval(lo, hi, lo_s, hi_s)


def _body_subset_box(inner: Box, outer: Box) -> bool:
    for ia, oa in zip(inner.axes, outer.axes):
        lo_ok = oa.lo < ia.lo or (oa.lo == ia.lo and (not oa.lo_strict or ia.lo_strict))
        hi_ok = ia.hi < oa.hi or (ia.hi == oa.hi and (not oa.hi_strict or ia.hi_strict))
        if not (lo_ok and hi_ok):
            return False
    return True


def compose(cover: IndexedCover, psi: Sequence[Body]) -> ConvexCellRelation:
    """The composite relation Psi o Omega on the cover's complex.

    Per cell the body is the union of Psi(k) over the indices k containing
    the cell, accepted only when that union is convex-representable:
    connected interval families and nested box families.  The order-relation
    use case Psi(k) = (k, +inf) lands in the first branch and produces
    exactly the (min index, +inf) interval fields.
    """
    if len(psi) != cover.size:
        raise ValueError("psi must be total on the index set")
    n = bd.body_dim(psi[0])
    out = {}
    for c in cover.complex.cells:
        ks = cover.indices_of(c)
        parts = [psi[k] for k in ks]
        first = parts[0]
        if all(p == first for p in parts):
            out[c] = first
            continue
        if all(isinstance(p, Box) and len(p.axes) == 1 for p in parts):
            out[c] = _union_of_intervals([_interval_data(p) for p in parts])
            continue
        if all(isinstance(p, Box) for p in parts):
            for candidate in parts:
                if all(_body_subset_box(p, candidate) for p in parts):
                    out[c] = candidate
                    break
            else:
                raise NonConvexUnion("box union is not nested on cell %s" % cell_id(c))
            continue
        raise NonConvexUnion("union not representable on cell %s" % cell_id(c))
    return ConvexCellRelation(cover.complex, n, out)


def order_relation(cover: IndexedCover) -> ConvexCellRelation:
    """Compose with the order relation {(k, t): k < t}: P = (min index, +inf)."""
    psi = [bd.open_interval(Fraction(k), POS_INF) for k in range(cover.size)]
    return compose(cover, psi)


def fatten(rel: ConvexCellRelation, eps, strict: bool = True) -> ConvexCellRelation:
    """O_eps[rel]: every body replaced by its eps-neighbourhood."""
    eps = Fraction(eps)
    return ConvexCellRelation(rel.complex, rel.target_dim,
                              {c: bd.fatten_body(rel[c], eps, strict)
                               for c in rel.complex.cells})


def pointwise_closure(rel: ConvexCellRelation) -> ConvexCellRelation:
    return ConvexCellRelation(rel.complex, rel.target_dim,
                              {c: bd.closure(rel[c]) for c in rel.complex.cells})


def bounds_of(rel: ConvexCellRelation) -> tuple[ScalarCellField, ScalarCellField]:
    """inf and sup fields of an interval-valued relation."""
    xi, eta = {}, {}
    for c in rel.complex.cells:
        lo, hi, _, _ = _interval_data(rel[c])
        xi[c], eta[c] = lo, hi
    return ScalarCellField(rel.complex, xi), ScalarCellField(rel.complex, eta)


def from_bounds(xi: ScalarCellField, eta: ScalarCellField) -> ConvexCellRelation:
    """The open-interval relation (xi, eta); requires xi < eta cellwise."""
    if xi.complex != eta.complex:
        raise ValueError("fields live on different complexes")
    out = {}
    for c in xi.complex.cells:
        if xi[c] >= eta[c]:
            raise EmptyInterval("xi >= eta on cell %s" % cell_id(c))
        out[c] = bd.open_interval(xi[c], eta[c])
    return ConvexCellRelation(xi.complex, 1, out)


def convex_hull_relation(field: FiniteSetCellField) -> ConvexCellRelation:
    """Per-cell closed convex hull of a finite point field."""
    out = {c: bd.v_polytope(field.values[c]) for c in field.complex.cells}
    return ConvexCellRelation(field.complex, field.target_dim, out)


def separation_gadget(K: SimplicialComplex, a_cells: Iterable[Cell],
                      b_cells: Iterable[Cell]) -> ConvexCellRelation:
    """The normality gadget: (-inf,-1) on A, (1,+inf) on B, the line elsewhere.

    A and B must be disjoint subcomplexes; the output is an open relation,
    and any selection of it separates A from B by a unit margin.
    """
    a_set = K.closure_cells(a_cells)
    b_set = K.closure_cells(b_cells)
    if a_set & b_set:
        raise NotDisjoint("subcomplexes share cells: %s"
                          % sorted(a_set & b_set)[:3])
    low = bd.open_interval(NEG_INF, Fraction(-1))
    high = bd.open_interval(Fraction(1), POS_INF)
    line = bd.whole_line(1)
    out = {}
    for c in K.cells:
        out[c] = low if c in a_set else high if c in b_set else line
    return ConvexCellRelation(K, 1, out)


def cover_from_relation(rel: ConvexCellRelation,
                        samples: Sequence[Sequence]) -> IndexedCover:
    """The cover Omega = Phi intersect (X x samples) of an open relation.

    member(a) collects the cells whose body contains samples[a]; upward
    closure is automatic from openness.  Raises NotACover listing uncovered
    cells so the caller can densify the sample set.
    """
    verdict = is_open_relation(rel)
    if not verdict:
        from .errors import NotOpenRelation
        raise NotOpenRelation("relation is not open", verdict.witness)
    pts = [tuple(Fraction(c) for c in s) for s in samples]
    members = []
    for y in pts:
        members.append(frozenset(c for c in rel.complex.cells
                                 if bd.in_body(rel[c], y)))
    covered = set().union(*members) if members else set()
    missing = sorted(set(rel.complex.cells) - covered)
    if missing:
        raise NotACover("samples leave cells uncovered", missing)
    return IndexedCover(rel.complex, tuple(members))


def membership(rel: ConvexCellRelation, cell: Cell, y: Sequence):
    """Exact inside/boundary/outside verdict with margin for one cell."""
    rel.complex.require_cell(cell)
    return bd.membership(rel[cell], y)


def transport_relation(sub: Subdivision, rel: ConvexCellRelation) -> ConvexCellRelation:
    """Carrier transport to a refinement; semicontinuity classes persist."""
    return ConvexCellRelation(sub.refined, rel.target_dim,
                              sub.transport_cell_values(rel.bodies))


def transport_scalar_field(sub: Subdivision, field: ScalarCellField) -> ScalarCellField:
    return ScalarCellField(sub.refined, sub.transport_cell_values(field.values))


def transport_cover(sub: Subdivision, cover: IndexedCover) -> IndexedCover:
    return IndexedCover(sub.refined,
                        tuple(sub.transport_cell_set(m) for m in cover.members))
