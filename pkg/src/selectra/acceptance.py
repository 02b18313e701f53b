"""The acceptance battery: seeded property runs behind `selectra verify`.

Each criterion is a function returning a CriterionOutcome whose report is
canonical JSON (timings excluded), so re-running with the same seed must
reproduce the bytes exactly; the determinism criterion does precisely that.
Instance counts and tolerances are fixed here, not configurable, because
they are the contract.
"""

from __future__ import annotations

import hashlib
import os
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import bodies as bd
from . import generators as gen
from .complex_core import linf, product_complex
from .instances import canonical_json, plmap_to_obj
from .relations import (
    ConvexCellRelation,
    bounds_of,
    classify_scalar,
    fatten,
    from_bounds,
    is_lsc_relation,
    is_open_relation,
)
from .selection_engines import (
    extend_selection,
    insert,
    lift_product,
    refine_c0,
    refine_countable,
    select_michael,
    select_pou,
    separate_sets,
)
from .verification import (
    CheckResult,
    Report,
    Sampler,
    check_insertion,
    check_refinement,
    check_selection,
    equivalence_suite,
    oracle_lsc,
    oracle_open,
)

DEFAULT_SEED = int(os.environ.get("SELECTRA_SEED", "20250809"))

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class CriterionOutcome:
    number: int
    title: str
    passed: bool
    elapsed: float
    report: Report

    def line(self) -> str:
        return "criterion %2d %-4s %-34s (%.1fs)" % (
            self.number, "PASS" if self.passed else "FAIL", self.title,
            self.elapsed)


def _outcome(number: int, title: str, start: float,
             report: Report) -> CriterionOutcome:
    return CriterionOutcome(number, title, report.passed,
                            time.perf_counter() - start, report)


def _digest(chunks) -> str:
    h = hashlib.sha256()
    for chunk in chunks:
        h.update(chunk.encode("utf-8"))
    return h.hexdigest()


# ---------------------------------------------------------------------------
# 1. classifier / oracle agreement
# ---------------------------------------------------------------------------

def criterion_agreement(seed: int = DEFAULT_SEED) -> CriterionOutcome:
    start = time.perf_counter()
    rnd = random.Random(seed)
    sampler = Sampler(seed=seed)
    report = Report()
    mismatches = []
    for i in range(25):
        K = gen.random_complex(rnd, max_cells=200)
        rel = gen.random_open_relation(rnd, K, valid=(i % 2 == 0))
        if is_open_relation(rel).holds != oracle_open(rel, sampler).passed:
            mismatches.append({"family": "open", "instance": i})
    for i in range(25):
        K = gen.random_complex(rnd, max_cells=200)
        rel = gen.random_closed_relation(rnd, K, valid=(i % 2 == 0))
        if is_lsc_relation(rel).holds != oracle_lsc(rel, sampler).passed:
            mismatches.append({"family": "lsc", "instance": i})
    report.add(CheckResult("classifier_oracle_agreement", not mismatches, "exact",
                           {"instances": 50,
                            "witness": mismatches[0] if mismatches else None}))
    return _outcome(1, "classifier-oracle agreement", start, report)


# ---------------------------------------------------------------------------
# 2. fattening equivalence
# ---------------------------------------------------------------------------

def criterion_fattening(seed: int = DEFAULT_SEED) -> CriterionOutcome:
    start = time.perf_counter()
    rnd = random.Random(seed + 100)
    report = Report()
    bad = None
    for i in range(50):
        K = gen.random_complex(rnd, max_cells=80)
        rel = gen.random_closed_relation(rnd, K, valid=(i % 2 == 0))
        lsc = is_lsc_relation(rel).holds
        for eps in (ONE, Fraction(1, 2), Fraction(1, 3)):
            if is_open_relation(fatten(rel, eps, strict=True)).holds != lsc:
                bad = {"instance": i, "eps": str(eps)}
                break
        if bad:
            break
    report.add(CheckResult("fattening_equivalence", bad is None, "exact",
                           {"instances": 50, "witness": bad}))
    return _outcome(2, "fattening equivalence", start, report)


# ---------------------------------------------------------------------------
# 3. insertion theorem
# ---------------------------------------------------------------------------

def criterion_insertion(seed: int = DEFAULT_SEED) -> CriterionOutcome:
    start = time.perf_counter()
    rnd = random.Random(seed + 200)
    report = Report()
    sampler = Sampler(seed=seed, samples=100)
    bad = None
    digests = []
    for i in range(100):
        if i % 5 == 4:
            K = gen.random_dim3_complex(rnd)
        else:
            K = gen.random_complex(rnd, max_cells=200)
        xi, eta = gen.random_usc_lsc_pair(rnd, K)
        res = insert(xi, eta)
        if not res.certificate.min_margin > 0:
            bad = {"instance": i, "reason": "margin"}
            break
        checked = check_insertion(res.map, xi, eta, sampler)
        if not checked.passed:
            bad = {"instance": i, "witness": checked.details.get("witness")}
            break
        digests.append(canonical_json(plmap_to_obj(res.map)))
    report.add(CheckResult("insertion_certified", bad is None, "exact",
                           {"instances": 100, "witness": bad,
                            "output_digest": _digest(digests)}))
    return _outcome(3, "insertion theorem", start, report)


# ---------------------------------------------------------------------------
# 4. insertion <-> selection round trip
# ---------------------------------------------------------------------------

def criterion_bounds_round_trip(seed: int = DEFAULT_SEED) -> CriterionOutcome:
    start = time.perf_counter()
    rnd = random.Random(seed + 300)
    report = Report()
    bad = None
    for i in range(50):
        K = gen.random_complex(rnd, max_cells=120)
        rel = gen.random_interval_relation(rnd, K, open_form=True, valid=True)
        xi, eta = bounds_of(rel)
        if from_bounds(xi, eta) != rel:
            bad = {"instance": i, "reason": "round_trip"}
            break
        if not (classify_scalar(xi).is_usc and classify_scalar(eta).is_lsc):
            bad = {"instance": i, "reason": "envelopes"}
            break
        res = insert(xi, eta)
        checked = check_selection(res.map, rel)
        if not checked.passed:
            bad = {"instance": i, "witness": checked.details.get("witness")}
            break
    report.add(CheckResult("insertion_selection_round_trip", bad is None, "exact",
                           {"instances": 50, "witness": bad}))
    return _outcome(4, "insertion-selection round trip", start, report)


# ---------------------------------------------------------------------------
# 5. POU selection
# ---------------------------------------------------------------------------

def criterion_pou_selection(seed: int = DEFAULT_SEED) -> CriterionOutcome:
    start = time.perf_counter()
    rnd = random.Random(seed + 400)
    report = Report()
    bad = None
    digests = []
    for i in range(50):
        kind = ("interval", "box", "fattened2", "fattened3")[i % 4]
        if kind == "interval":
            K = gen.random_complex(rnd, max_cells=120)
            rel = gen.random_interval_relation(rnd, K, open_form=True, valid=True)
        elif kind == "box":
            K = gen.random_complex(rnd, max_cells=120)
            rel = gen.random_box_relation(rnd, K, open_form=True, valid=True)
        elif kind == "fattened2":
            K = gen.random_complex(rnd, max_cells=40)
            rel = gen.random_fattened_relation(rnd, K, n=2)
        else:
            K = gen.path_complex(rnd.randint(1, 3))
            rel = gen.random_fattened_relation(rnd, K, n=3)
        res = select_pou(rel)
        if not res.certificate.min_margin > 0:
            bad = {"instance": i, "reason": "margin"}
            break
        checked = check_selection(res.map, rel)
        if not checked.passed:
            bad = {"instance": i, "witness": checked.details.get("witness")}
            break
        digests.append(canonical_json(plmap_to_obj(res.map)))
    report.add(CheckResult("pou_selection", bad is None, "exact",
                           {"instances": 50, "witness": bad,
                            "output_digest": _digest(digests)}))
    return _outcome(5, "POU selection", start, report)


# ---------------------------------------------------------------------------
# 6. Michael iteration
# ---------------------------------------------------------------------------

def criterion_michael(seed: int = DEFAULT_SEED) -> CriterionOutcome:
    start = time.perf_counter()
    rnd = random.Random(seed + 500)
    report = Report()
    tol = Fraction(1, 64)
    bad = None
    max_rounds = 0
    for i in range(25):
        if i % 5 == 4:
            # dim 2: six-fold cell growth per round forces mild variation
            K = gen.triangle_complex()
            rel = gen.random_michael_relation(rnd, K, drift=Fraction(1, 256))
        else:
            K = gen.path_complex(rnd.randint(1, 4))
            rel = gen.random_michael_relation(rnd, K)
        res = select_michael(rel, tol, max_depth=12)
        rounds = sum(step.rounds for step in res.trace)
        max_rounds = max(max_rounds, rounds)
        for step in res.trace:
            if step.sup_delta > Fraction(2) ** (-step.level + 1):
                bad = {"instance": i, "step": step.level, "reason": "contraction"}
                break
        if bad:
            break
        if res.certificate.max_distance > tol:
            bad = {"instance": i, "reason": "tolerance"}
            break
        checked = check_selection(res.map, rel, tolerance=tol)
        if not checked.passed:
            bad = {"instance": i, "witness": checked.details.get("witness")}
            break
    report.add(CheckResult("michael_iteration", bad is None, "exact",
                           {"instances": 25, "witness": bad,
                            "max_rounds": max_rounds}))
    return _outcome(6, "Michael iteration", start, report)


# ---------------------------------------------------------------------------
# 7. extension
# ---------------------------------------------------------------------------

def criterion_extension(seed: int = DEFAULT_SEED) -> CriterionOutcome:
    start = time.perf_counter()
    rnd = random.Random(seed + 600)
    report = Report()
    bad = None
    for i in range(25):
        K = gen.random_complex(rnd, max_cells=40)
        rel = gen.random_interval_relation(rnd, K, open_form=True, valid=True)
        a_cells = gen.random_subcomplex(rnd, K)
        g = {}
        for c in sorted(a_cells):
            for vid in c:
                if vid not in g:
                    anchor = bd.interior_point(rel[(vid,)])
                    probes = [p for p in bd.closure_candidates(
                        bd.closure(rel[(vid,)]))]
                    pick = probes[rnd.randrange(len(probes))]
                    g[vid] = tuple(a + (p - a) / 2 for a, p in zip(anchor, pick))
        res = extend_selection(rel, sorted(a_cells), g)
        for vid, val in g.items():
            if res.map.values[vid] != val:
                bad = {"instance": i, "reason": "restriction", "vertex": vid}
                break
        if bad:
            break
        checked = check_selection(res.map, rel)
        if not checked.passed:
            bad = {"instance": i, "witness": checked.details.get("witness")}
            break
    report.add(CheckResult("extension", bad is None, "exact",
                           {"instances": 25, "witness": bad}))
    return _outcome(7, "selection extension", start, report)


# ---------------------------------------------------------------------------
# 8. refinement extraction
# ---------------------------------------------------------------------------

def criterion_refinement(seed: int = DEFAULT_SEED) -> CriterionOutcome:
    start = time.perf_counter()
    rnd = random.Random(seed + 700)
    report = Report()
    bad = None
    for i in range(50):
        small = i % 3 == 0
        K = gen.triangle_complex() if small else gen.path_complex(rnd.randint(1, 5))
        cover = gen.random_increasing_cover(rnd, K, m=rnd.randint(1, 4))

        res = refine_countable(cover)
        checked = check_refinement(res.cover, cover, subdivision=res.subdivision)
        if not checked.passed:
            bad = {"instance": i, "engine": "countable",
                   "witness": checked.details.get("witness")}
            break
        if res.order_bound > res.guaranteed_bound:
            bad = {"instance": i, "engine": "countable", "reason": "order"}
            break

        res0 = refine_c0(cover)
        checked0 = check_refinement(res0.cover, cover, subdivision=res0.subdivision)
        if not checked0.passed:
            bad = {"instance": i, "engine": "c0",
                   "witness": checked0.details.get("witness")}
            break
    report.add(CheckResult("refinement_extraction", bad is None, "exact",
                           {"instances": 50, "witness": bad}))
    return _outcome(8, "refinement extraction", start, report)


# ---------------------------------------------------------------------------
# 9. product lifting
# ---------------------------------------------------------------------------

def criterion_products(seed: int = DEFAULT_SEED) -> CriterionOutcome:
    start = time.perf_counter()
    rnd = random.Random(seed + 800)
    report = Report()
    bad = None
    consistency = 0
    for label, left, right in (
            ("segment_x_segment", gen.path_complex(1), gen.path_complex(1)),
            ("triangle_x_segment", gen.triangle_complex(), gen.path_complex(1))):
        prod = product_complex(left, right)
        bounds = gen._nested_interval_bounds(rnd, prod.complex)
        rel = ConvexCellRelation(prod.complex, 1,
                                 {c: bd.open_interval(bounds[0][c], bounds[1][c])
                                  for c in prod.complex.cells})
        lifted = lift_product(prod, rel)
        checked = check_selection(lifted.map, rel)
        if not checked.passed:
            bad = {"product": label, "witness": checked.details.get("witness")}
            break
        for _ in range(500):
            xc = [Fraction(rnd.randint(0, 16), 16)
                  for _ in range(left.dim_ambient)]
            if left.dim_ambient == 2 and xc[0] + xc[1] > 1:
                xc = [ONE - xc[0], ONE - xc[1]]
            yc = [Fraction(rnd.randint(0, 16), 16)
                  for _ in range(right.dim_ambient)]
            consistency += 1
            if lifted.at(tuple(xc))(tuple(yc)) != lifted.map.evaluate(
                    tuple(xc) + tuple(yc)):
                bad = {"product": label, "reason": "evaluator"}
                break
        if bad:
            break
        # separation of the two end sub-products {x=0} and {x=1}
        if left.dim_ambient == 1:
            a_cells = [c for c in prod.complex.cells
                       if all(prod.complex.vertices[v][0] == 0 for v in c)]
            b_cells = [c for c in prod.complex.cells
                       if all(prod.complex.vertices[v][0] == 1 for v in c)]
            sep = separate_sets(prod.complex, a_cells, b_cells)
            for c in a_cells:
                if any(sep.map.values[v][0] > -1 for v in c):
                    bad = {"product": label, "reason": "separation_a"}
            for c in b_cells:
                if any(sep.map.values[v][0] < 1 for v in c):
                    bad = {"product": label, "reason": "separation_b"}
        if bad:
            break
    report.add(CheckResult("product_lifting", bad is None, "exact",
                           {"consistency_points": consistency, "witness": bad}))
    return _outcome(9, "product lifting", start, report)


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

CRITERIA: tuple = (
    criterion_agreement,
    criterion_fattening,
    criterion_insertion,
    criterion_bounds_round_trip,
    criterion_pou_selection,
    criterion_michael,
    criterion_extension,
    criterion_refinement,
    criterion_products,
)


def run_all(seed: int = DEFAULT_SEED,
            echo: Optional[Callable[[str], None]] = None,
            include_determinism: bool = True) -> list:
    outcomes = []
    for fn in CRITERIA:
        outcome = fn(seed)
        outcomes.append(outcome)
        if echo:
            echo(outcome.line())
    if include_determinism:
        outcome = criterion_determinism(seed, outcomes)
        outcomes.append(outcome)
        if echo:
            echo(outcome.line())
    return outcomes


def criterion_determinism(seed: int, first_pass: list) -> CriterionOutcome:
    """Criterion 10: re-run every criterion; reports must be byte-identical."""
    start = time.perf_counter()
    report = Report()
    mismatch = None
    for fn, earlier in zip(CRITERIA, first_pass):
        again = fn(seed)
        if again.report.to_json() != earlier.report.to_json():
            mismatch = {"criterion": earlier.number}
            break
    suite_a = equivalence_suite(seed, instances=10).to_json()
    suite_b = equivalence_suite(seed, instances=10).to_json()
    if suite_a != suite_b:
        mismatch = mismatch or {"criterion": "equivalence_suite"}
    report.add(CheckResult("determinism", mismatch is None, "exact",
                           {"witness": mismatch}))
    return _outcome(10, "determinism", start, report)
