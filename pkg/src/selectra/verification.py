"""Independent brute-force oracles and certificate checkers.

The classifiers in :mod:`selectra.relations` decide openness and lower
semicontinuity through face-lattice inclusions.  The oracles here test the
*definitions* instead: openness by searching for product-box escapes around
graph points, l.s.c. by checking preimage openness against a family of
rational boxes.  They are exact for falsity (every reported witness is
re-validated by the membership primitive) and sampling-limited for truth,
and they never contradict a correct classifier verdict: probe points carry
a membership margin above the escape resolution.

Checkers re-derive engine postconditions from scratch, so certificates can
be validated without re-running the engines.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import bodies as bd
from .complex_core import (
    Cell,
    PLMap,
    Point,
    SimplicialComplex,
    Subdivision,
    carrier,
    cell_id,
    linf,
)
from .errors import IndexMismatch, MeshMismatch, PointOutsideComplex
from .rational import POS_INF, format_scalar, is_finite
from .relations import (
    ConvexCellRelation,
    IndexedCover,
    ScalarCellField,
    classify_scalar,
    is_lsc_relation,
    is_open_relation,
    min_index_field,
)
from .selection_engines import PartitionOfUnity, SelectionCertificate

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Sampler and report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sampler:
    """Deterministic probe generator: same seed, same samples, same report."""

    seed: int = 0
    samples: int = 1000
    resolution: Fraction = Fraction(1, 1024)   # 2^-10

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def scales(self) -> list[Fraction]:
        out = []
        j = 10
        while j >= 1:
            out.append(Fraction(1, 2 ** j))
            j -= 3
        return out   # finest first: true instances exit after one scale


@dataclass
class CheckResult:
    name: str
    passed: bool
    strength: str          # "exact" or "sampled"
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_json_obj(self, include_timings: bool = False) -> dict:
        obj = {"name": self.name, "passed": self.passed,
               "strength": self.strength, "details": self.details}
        if include_timings:
            obj["elapsed_s"] = round(self.elapsed, 3)
        return obj


@dataclass
class Report:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, result: CheckResult) -> None:
        self.checks.append(result)

    def to_json(self, include_timings: bool = False) -> str:
        # Timings are excluded from the canonical form so identical seeds
        # produce byte-identical reports.
        obj = {"passed": self.passed,
               "checks": [c.to_json_obj(include_timings) for c in self.checks]}
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"

    def summary_lines(self) -> list[str]:
        out = []
        for c in self.checks:
            out.append("%-4s %-40s [%s] %s"
                       % ("PASS" if c.passed else "FAIL", c.name, c.strength,
                          _brief(c.details)))
        return out


def _brief(details: dict) -> str:
    keep = {k: v for k, v in details.items() if k in
            ("instances", "pairs", "probes", "witness", "count", "order")}
    return json.dumps(keep, sort_keys=True) if keep else ""


def _fmt_point(pt: Sequence) -> list:
    return [format_scalar(Fraction(c)) for c in pt]


# ---------------------------------------------------------------------------
# Openness oracle
# ---------------------------------------------------------------------------

def _body_probes(body, resolution: Fraction) -> list[Point]:
    """Deterministic probe points strictly inside the body, margin > resolution."""
    anchor = bd.interior_point(body)
    n = bd.body_dim(body)
    raw = [anchor]
    if bd.is_bounded(body):
        for cand in bd.closure_candidates(body)[:10]:
            for t in (Fraction(1, 8), Fraction(1, 2)):
                raw.append(tuple(c + t * (a - c) for c, a in zip(cand, anchor)))
    else:
        ray = bd.recession_ray(body)
        for k in (1, 4):
            raw.append(tuple(a + k * r for a, r in zip(anchor, ray)))
        if isinstance(body, bd.Box):
            for i, ax in enumerate(body.axes):
                for bound in (ax.lo, ax.hi):
                    if is_finite(bound):
                        moved = list(anchor)
                        moved[i] = bound + (anchor[i] - bound) / 8
                        raw.append(tuple(moved))
    probes = []
    seen = set()
    for pt in raw:
        if pt in seen:
            continue
        seen.add(pt)
        verdict, margin = bd.membership(body, pt)
        if verdict == "inside" and margin > resolution:
            probes.append(pt)
    return probes


def _body_points(body) -> list[Point]:
    """Deterministic points of the body itself (no interior requirement).

    Used by the l.s.c. oracle, whose box tests are exact in both directions,
    so boundary and lower-dimensional points are fair probes.
    """
    raw = []
    if isinstance(body, bd.VPolytope):
        raw.extend(body.points)
        raw.append(bd.interior_point(body))
    elif isinstance(body, bd.Fattened):
        raw.append(bd.interior_point(body))
        pull = body.radius if not body.strict else body.radius * Fraction(7, 8)
        for gen in body.base.points:
            raw.append(gen)
            for corner in ((pull, pull), (-pull, pull), (pull, -pull),
                           (-pull, -pull))[:2 ** len(gen)]:
                raw.append(tuple(g + c for g, c in zip(gen, corner[:len(gen)])))
    elif isinstance(body, bd.Box):
        anchor = bd.interior_point(body)
        raw.append(anchor)
        for i, ax in enumerate(body.axes):
            for bound, strict in ((ax.lo, ax.lo_strict), (ax.hi, ax.hi_strict)):
                if is_finite(bound):
                    moved = list(anchor)
                    moved[i] = bound if not strict else bound + (anchor[i] - bound) / 8
                    raw.append(tuple(moved))
    else:   # HPolytope
        anchor = bd.interior_point(body)
        raw.append(anchor)
        for vert in bd.closure_candidates(body)[:10]:
            raw.append(tuple(v + (a - v) / 8 for v, a in zip(vert, anchor)))
    probes = []
    seen = set()
    for pt in raw:
        if pt not in seen and bd.in_body(body, pt):
            seen.add(pt)
            probes.append(pt)
    return probes


def _axis_shifts(pt: Point, scale: Fraction) -> list[Point]:
    out = [pt]
    for i in range(len(pt)):
        for sign in (1, -1):
            moved = list(pt)
            moved[i] = pt[i] + sign * scale
            out.append(tuple(moved))
    return out


def oracle_open(rel: ConvexCellRelation, sampler: Sampler) -> CheckResult:
    """Definition-level openness probe.

    For sampled graph points (x, y) with x interior to a cell, an escape at
    scale s is a pair (x', y') within s of (x, y) and outside the graph.
    A point with escapes at every scale down to the resolution refutes
    openness; the finest escaping pair is the (re-validated) witness.
    """
    start = time.perf_counter()
    K = rel.complex
    scales = sampler.scales()
    witnesses = []
    pairs = probes_used = 0
    cache = {}
    for cell in K.cells:
        x = K.barycenter(cell)
        body = rel[cell]
        if cell not in cache:
            cache[cell] = _body_probes(body, sampler.resolution)
        for coface in K.covering_cofaces(cell):
            if rel[coface] == body:
                continue   # identical bodies cannot witness an escape
            pairs += 1
            target = rel[coface]
            bary = K.barycenter(coface)
            span = max(linf(bary, x), ONE)
            for y in cache[cell]:
                probes_used += 1
                escape = None
                for scale in scales:   # finest first
                    s = scale / span
                    x_prime = tuple(a + s * (b - a) for a, b in zip(x, bary))
                    found = None
                    for y_prime in _axis_shifts(y, scale):
                        if bd.membership(target, y_prime)[0] == "outside":
                            found = (x_prime, y_prime)
                            break
                    if found is None:
                        escape = None
                        break
                    if escape is None:
                        escape = found
                if escape is not None:
                    x_w, y_w = escape
                    assert bd.in_body(rel[cell], y)
                    assert bd.membership(rel[coface], y_w)[0] == "outside"
                    witnesses.append({
                        "face": cell_id(cell), "coface": cell_id(coface),
                        "x": _fmt_point(x), "y": _fmt_point(y),
                        "escape_x": _fmt_point(x_w), "escape_y": _fmt_point(y_w)})
                    break
            if witnesses:
                break
        if witnesses:
            break
    passed = not witnesses
    return CheckResult(
        name="oracle_open", passed=passed,
        strength="exact" if witnesses else "sampled",
        details={"pairs": pairs, "probes": probes_used,
                 "witness": witnesses[0] if witnesses else None},
        elapsed=time.perf_counter() - start)


def oracle_lsc(rel: ConvexCellRelation, sampler: Sampler) -> CheckResult:
    """Preimage-openness probe over a family of rational boxes.

    For boxes U around body probes, the cell set {c : P(c) meets U} must be
    upward-closed; a face in the set with a coface outside it is an exact
    witness that the preimage of U is not open.
    """
    start = time.perf_counter()
    K = rel.complex
    witnesses = []
    boxes = 0
    probe_cache = {}
    for cell in K.cells:
        body = rel[cell]
        if cell not in probe_cache:
            probe_cache[cell] = _body_points(body)
        for y in probe_cache[cell]:
            for scale in (Fraction(1, 4), Fraction(1, 64), sampler.resolution):
                boxes += 1
                if not _open_box_meets_body(rel[cell], y, scale):
                    continue
                for coface in K.covering_cofaces(cell):
                    if not _open_box_meets_body(rel[coface], y, scale):
                        assert bd.dist_to_closure(rel[coface], y) >= scale
                        witnesses.append({
                            "face": cell_id(cell), "coface": cell_id(coface),
                            "u_center": _fmt_point(y),
                            "u_radius": format_scalar(scale)})
                        break
                if witnesses:
                    break
            if witnesses:
                break
        if witnesses:
            break
    return CheckResult(
        name="oracle_lsc", passed=not witnesses,
        strength="exact" if witnesses else "sampled",
        details={"boxes": boxes,
                 "witness": witnesses[0] if witnesses else None},
        elapsed=time.perf_counter() - start)


def _open_box_meets_body(body, center: Point, radius: Fraction) -> bool:
    """Exact test: does the open l-inf box B(center, radius) meet the body?"""
    if isinstance(body, bd.Box):
        for ax, c in zip(body.axes, center):
            lo, lo_s = c - radius, True
            hi, hi_s = c + radius, True
            if ax.lo > lo or (ax.lo == lo and ax.lo_strict):
                lo, lo_s = ax.lo, ax.lo_strict
            if ax.hi < hi or (ax.hi == hi and ax.hi_strict):
                hi, hi_s = ax.hi, ax.hi_strict
            if lo > hi or (lo == hi and (lo_s or hi_s)):
                return False
        return True
    from .exactlp import lp_maximize
    n = len(center)
    if isinstance(body, bd.VPolytope):
        gens = body.points
        k = len(gens)
        # max t s.t. z in hull, |z - center| <= radius - t
        a_ub, b_ub = [], []
        for i in range(n):
            a_ub.append([gens[j][i] for j in range(k)] + [ONE])
            b_ub.append(center[i] + radius)
            a_ub.append([-gens[j][i] for j in range(k)] + [ONE])
            b_ub.append(radius - center[i])
        res = lp_maximize([ZERO] * k + [ONE], a_ub=a_ub, b_ub=b_ub,
                          a_eq=[[ONE] * k + [ZERO]], b_eq=[ONE],
                          nonneg=[True] * (k + 1))
        return res.optimal and res.value > 0
    if isinstance(body, bd.HPolytope):
        rows, rhs = [], []
        for normal, b in body.halfspaces:
            weight = sum(abs(c) for c in normal)
            rows.append(list(normal) + [weight])
            rhs.append(b)
        for i in range(n):
            e = [ZERO] * n
            e[i] = ONE
            rows.append(e + [ONE])
            rhs.append(center[i] + radius)
            rows.append([-v for v in e] + [ONE])
            rhs.append(radius - center[i])
        res = lp_maximize([ZERO] * n + [ONE], a_ub=rows, b_ub=rhs)
        return res.optimal and res.value > 0
    if isinstance(body, bd.Fattened):
        gens = body.base.points
        k = len(gens)
        reach = body.radius
        # y = z + w with z in hull; strict memberships via the shared slack t
        nvars = k + 2 * n + 1    # lambda, w, y, t
        a_ub, b_ub, a_eq, b_eq = [], [], [], []
        for i in range(n):
            row = [ZERO] * nvars
            row[k + i] = ONE
            row[-1] = ONE if body.strict else ZERO
            a_ub.append(list(row))
            b_ub.append(reach)
            row = [ZERO] * nvars
            row[k + i] = -ONE
            row[-1] = ONE if body.strict else ZERO
            a_ub.append(list(row))
            b_ub.append(reach)
            row = [ZERO] * nvars
            row[k + n + i] = ONE
            row[-1] = ONE
            a_ub.append(list(row))
            b_ub.append(center[i] + radius)
            row = [ZERO] * nvars
            row[k + n + i] = -ONE
            row[-1] = ONE
            a_ub.append(list(row))
            b_ub.append(radius - center[i])
            row = [gens[j][i] for j in range(k)] + [ZERO] * (2 * n) + [ZERO]
            row[k + i] = ONE
            row[k + n + i] = -ONE
            a_eq.append(list(row))
            b_eq.append(ZERO)
        a_eq.append([ONE] * k + [ZERO] * (2 * n + 1))
        b_eq.append(ONE)
        nonneg = [True] * k + [False] * (2 * n) + [True]
        res = lp_maximize([ZERO] * (k + 2 * n) + [ONE], a_ub=a_ub, b_ub=b_ub,
                          a_eq=a_eq, b_eq=b_eq, nonneg=nonneg)
        return res.optimal and res.value > 0
    raise TypeError(type(body).__name__)


# ---------------------------------------------------------------------------
# Checkers
# ---------------------------------------------------------------------------

def refinement_carrier_map(fine: SimplicialComplex,
                           coarse: SimplicialComplex) -> dict:
    """Geometric carrier map of a refinement, or MeshMismatch."""
    if fine == coarse:
        return {c: c for c in coarse.cells}
    out = {}
    for c in fine.cells:
        try:
            base, _ = carrier(coarse, fine.barycenter(c))
        except PointOutsideComplex as exc:
            raise MeshMismatch("cell %s outside the base complex" % cell_id(c)) from exc
        for vid in c:
            vcell, _ = carrier(coarse, fine.vertices[vid])
            if not set(vcell) <= set(base):
                raise MeshMismatch("cell %s straddles base cells" % cell_id(c))
        out[c] = base
    return out


def check_selection(f: PLMap, rel: ConvexCellRelation,
                    tolerance: Optional[Fraction] = None) -> CheckResult:
    """Exact per-cell vertex check that f selects from rel.

    Open bodies demand strict membership with positive margin; closed bodies
    demand distance at most ``tolerance`` (default: exact membership of the
    closure).  Convexity turns the vertex check into a pointwise guarantee.
    """
    start = time.perf_counter()
    carrier_map = refinement_carrier_map(f.complex, rel.complex)
    failures = []
    cells = 0
    worst_margin: Fraction | float = POS_INF
    worst_dist = ZERO
    for cell in f.complex.cells:
        body = rel[carrier_map[cell]]
        cells += 1
        for vid in cell:
            value = f.values[vid]
            if bd.is_open_form(body):
                verdict, margin = bd.membership(body, value)
                if verdict != "inside":
                    failures.append({"cell": cell_id(cell), "vertex": vid,
                                     "value": _fmt_point(value)})
                elif margin < worst_margin:
                    worst_margin = margin
            else:
                d = bd.dist_to_closure(body, value)
                bound = tolerance if tolerance is not None else ZERO
                if d > bound:
                    failures.append({"cell": cell_id(cell), "vertex": vid,
                                     "value": _fmt_point(value),
                                     "distance": format_scalar(d)})
                elif d > worst_dist:
                    worst_dist = d
        if len(failures) > 3:
            break
    details = {"cells": cells,
               "min_margin": format_scalar(worst_margin),
               "max_distance": format_scalar(worst_dist)}
    if failures:
        details["witness"] = failures[0]
    return CheckResult("check_selection", not failures, "exact", details,
                       time.perf_counter() - start)


def check_pou(pou: PartitionOfUnity, cover: IndexedCover) -> CheckResult:
    """Exact POU soundness: unit sums, [0,1] range, cozero containment."""
    start = time.perf_counter()
    K = pou.complex
    failures = []
    for vid in K.used_vertices:
        total = sum(m.values[vid][0] for m in pou.members)
        if total != 1:
            failures.append({"vertex": vid, "sum": format_scalar(total)})
        for m in pou.members:
            v = m.values[vid][0]
            if v < 0 or v > 1:
                failures.append({"vertex": vid, "value": format_scalar(v)})
    moved = tuple(pou.subdivision.transport_cell_set(m) for m in cover.members)
    for k, member in enumerate(pou.members):
        cozero = frozenset(c for c in K.cells
                           if any(member.values[v][0] > 0 for v in c))
        if not cozero <= moved[k]:
            bad = sorted(cozero - moved[k])[0]
            failures.append({"index": k, "cozero_escape": cell_id(bad)})
    details = {"indices": len(pou.members)}
    if failures:
        details["witness"] = failures[0]
    return CheckResult("check_pou", not failures, "exact", details,
                       time.perf_counter() - start)


def check_refinement(phi: IndexedCover, omega: IndexedCover,
                     subdivision: Optional[Subdivision] = None) -> CheckResult:
    """Memberwise containment, covering, and the order statistic."""
    start = time.perf_counter()
    if phi.size != omega.size:
        raise IndexMismatch("covers use different index sets")
    if subdivision is not None:
        omega_members = tuple(subdivision.transport_cell_set(m)
                              for m in omega.members)
    elif phi.complex == omega.complex:
        omega_members = omega.members
    else:
        raise IndexMismatch("covers live on different complexes")
    failures = []
    for k in range(phi.size):
        extra = phi.members[k] - omega_members[k]
        if extra:
            failures.append({"index": k, "escape": cell_id(sorted(extra)[0])})
    covered = set()
    for m in phi.members:
        covered |= set(m)
    missing = set(phi.complex.cells) - covered
    if missing:
        failures.append({"uncovered": cell_id(sorted(missing)[0])})
    details = {"order": phi.order}
    if failures:
        details["witness"] = failures[0]
    return CheckResult("check_refinement", not failures, "exact", details,
                       time.perf_counter() - start)


def check_insertion(f: PLMap, xi: ScalarCellField, eta: ScalarCellField,
                    sampler: Optional[Sampler] = None) -> CheckResult:
    """Strict sandwich xi < f < eta: cellwise margins plus sampled points."""
    start = time.perf_counter()
    carrier_map = refinement_carrier_map(f.complex, xi.complex)
    failures = []
    for cell in f.complex.cells:
        base = carrier_map[cell]
        lo, hi = f.cell_value_range(cell)
        if not (xi[base] < lo and hi < eta[base]):
            failures.append({"cell": cell_id(cell)})
            break
    samples = 0
    if sampler is not None and not failures:
        rnd = sampler.rng()
        cells = f.complex.cells
        for _ in range(sampler.samples):
            cell = cells[rnd.randrange(len(cells))]
            weights = [Fraction(rnd.randint(1, 8)) for _ in cell]
            total = sum(weights)
            bary = [w / total for w in weights]
            value = f.evaluate_barycentric(cell, bary)[0]
            base = carrier_map[cell]
            samples += 1
            if not (xi[base] < value < eta[base]):
                failures.append({"cell": cell_id(cell),
                                 "value": format_scalar(value)})
                break
    details = {"samples": samples}
    if failures:
        details["witness"] = failures[0]
    return CheckResult("check_insertion", not failures, "exact", details,
                       time.perf_counter() - start)


def validate_certificate(cert: SelectionCertificate, f: PLMap,
                         rel: ConvexCellRelation) -> CheckResult:
    """Re-check a stored certificate entry by entry (engine-independent)."""
    start = time.perf_counter()
    failures = []
    for cell in rel.complex.cells:
        rows = cert.vertex_evidence.get(cell)
        if rows is None:
            failures.append({"cell": cell_id(cell), "reason": "missing"})
            continue
        body = rel[cell]
        for vid, stated in rows:
            if cert.kind == "strict":
                verdict, margin = bd.membership(body, f.values[vid])
                if verdict != "inside" or margin != stated:
                    failures.append({"cell": cell_id(cell), "vertex": vid})
            else:
                d = bd.dist_to_closure(body, f.values[vid])
                if d != stated or d > cert.tolerance:
                    failures.append({"cell": cell_id(cell), "vertex": vid})
        if failures:
            break
    details = {"kind": cert.kind}
    if failures:
        details["witness"] = failures[0]
    return CheckResult("validate_certificate", not failures, "exact", details,
                       time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Theorem-level equivalence suite
# ---------------------------------------------------------------------------

def equivalence_suite(seed: int = 0, instances: int = 50) -> Report:
    """Seeded run of the theorem-level equivalences.

    Covers: the fattening equivalence (l.s.c. iff every fattening is open),
    interval bounds (open iff usc/lsc envelope pair), the interval-valued
    coincidence of l.s.c. and openness, openness of order-relation
    composites, closure idempotence/monotonicity with the finite analogue of
    the increasing-cover closure, hull l.s.c. for monotone finite fields,
    and POU soundness.
    """
    from . import generators as gen
    from .relations import (
        bounds_of,
        convex_hull_relation,
        fatten,
        from_bounds,
        order_relation,
        pointwise_closure,
    )
    from .selection_engines import pou_from_cover

    report = Report()

    # 1. fattening equivalence, both directions, three radii
    start = time.perf_counter()
    rnd = random.Random(seed)
    bad = None
    count = 0
    for i in range(instances):
        K = gen.random_complex(rnd, max_cells=60)
        rel = gen.random_closed_relation(rnd, K, valid=(i % 2 == 0))
        lsc = is_lsc_relation(rel).holds
        for k in (1, 2, 3):
            count += 1
            fat = fatten(rel, Fraction(1, k), strict=True)
            if is_open_relation(fat).holds != lsc:
                bad = {"instance": i, "eps": "1/%d" % k}
                break
        if bad:
            break
    report.add(CheckResult("fattening_equivalence", bad is None, "exact",
                           {"instances": instances, "count": count,
                            "witness": bad},
                           time.perf_counter() - start))

    # 2+3. bounds equivalence and interval lsc<->open coincidence
    start = time.perf_counter()
    rnd = random.Random(seed + 1)
    bad = None
    for i in range(instances):
        K = gen.random_complex(rnd, max_cells=60)
        rel = gen.random_interval_relation(rnd, K, open_form=True,
                                           valid=(i % 2 == 0))
        xi, eta = bounds_of(rel)
        envelopes = (classify_scalar(xi).is_usc and classify_scalar(eta).is_lsc)
        open_v = is_open_relation(rel).holds
        if open_v != envelopes:
            bad = {"instance": i, "reason": "bounds"}
            break
        if open_v != is_lsc_relation(rel).holds:
            bad = {"instance": i, "reason": "coincidence"}
            break
        if from_bounds(xi, eta) != rel:
            bad = {"instance": i, "reason": "round_trip"}
            break
    report.add(CheckResult("bounds_equivalence", bad is None, "exact",
                           {"instances": instances, "witness": bad},
                           time.perf_counter() - start))

    # 4. composites of increasing covers with the order relation are open
    start = time.perf_counter()
    rnd = random.Random(seed + 2)
    bad = None
    for i in range(instances):
        K = gen.random_complex(rnd, max_cells=60)
        cover = gen.random_increasing_cover(rnd, K)
        rel = order_relation(cover)
        if not is_open_relation(rel).holds:
            bad = {"instance": i}
            break
        alpha = min_index_field(cover)
        if not classify_scalar(alpha).is_usc:
            bad = {"instance": i, "reason": "alpha_not_usc"}
            break
    report.add(CheckResult("composition_open", bad is None, "exact",
                           {"instances": instances, "witness": bad},
                           time.perf_counter() - start))

    # 5. pointwise closure: idempotent, monotone; increasing-cover analogue
    start = time.perf_counter()
    rnd = random.Random(seed + 3)
    bad = None
    for i in range(instances):
        K = gen.random_complex(rnd, max_cells=40)
        rel = gen.random_open_relation(rnd, K, valid=True)
        if any(isinstance(rel[c], bd.HPolytope) for c in K.cells):
            rel = gen.random_interval_relation(rnd, K, open_form=True)
        closed = pointwise_closure(rel)
        if pointwise_closure(closed) != closed:
            bad = {"instance": i, "reason": "idempotence"}
            break
        monotone = all(bd.closure_contains(closed[c], rel[c])[0]
                       for c in K.cells)
        if not monotone:
            bad = {"instance": i, "reason": "monotone"}
            break
        cover = gen.random_increasing_cover(rnd, K)
        m = cover.size
        alpha = min_index_field(cover)
        # order-encoded closure of the cover with a top index attached
        theta = ConvexCellRelation(K, 1, {
            c: bd.open_interval(alpha[c] - Fraction(1, 2), Fraction(m) + Fraction(1, 2))
            for c in K.cells})
        if not is_open_relation(theta).holds:
            bad = {"instance": i, "reason": "cover_closure"}
            break
        closed_theta = pointwise_closure(theta)
        for c in K.cells:
            sections = [k for k in range(m + 1)
                        if bd.in_body(closed_theta[c], (Fraction(k),))]
            if sections != list(range(int(alpha[c]), m + 1)):
                bad = {"instance": i, "reason": "integer_sections"}
                break
        if bad:
            break
    report.add(CheckResult("closure_properties", bad is None, "exact",
                           {"instances": instances, "witness": bad},
                           time.perf_counter() - start))

    # 6. hulls of face-monotone finite fields are l.s.c.
    start = time.perf_counter()
    rnd = random.Random(seed + 4)
    bad = None
    for i in range(instances):
        K = gen.random_complex(rnd, max_cells=40)
        fsf = gen.random_finite_set_field(rnd, K, n=rnd.randint(1, 2))
        rel = convex_hull_relation(fsf)
        if not is_lsc_relation(rel).holds:
            bad = {"instance": i}
            break
    report.add(CheckResult("hull_lsc", bad is None, "exact",
                           {"instances": instances, "witness": bad},
                           time.perf_counter() - start))

    # 7. POU soundness over random covers
    start = time.perf_counter()
    rnd = random.Random(seed + 5)
    bad = None
    for i in range(instances):
        K = gen.random_complex(rnd, max_cells=30)
        cover = gen.random_cover(rnd, K)
        pou = pou_from_cover(K, cover)
        result = check_pou(pou, cover)
        if not result.passed:
            bad = {"instance": i, "witness": result.details.get("witness")}
            break
    report.add(CheckResult("pou_soundness", bad is None, "exact",
                           {"instances": instances, "witness": bad},
                           time.perf_counter() - start))

    return report
