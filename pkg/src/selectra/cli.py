"""Command-line interface.

Subcommands mirror the library surface: classify, insert, select, michael,
extend, refine, refine-c0, lift, separate, verify, demo, plot.  Exit codes:
0 success, 1 the asserted property is false or the problem infeasible (a
witness is part of the output), 2 invalid input.  All file output is
written atomically and in canonical form.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import acceptance
from . import bodies as bd
from .complex_core import cell_id
from .errors import (
    EmptyInterval,
    EngineError,
    GapViolated,
    NonConvexUnion,
    NotACover,
    NotASelectionOnA,
    NotDisjoint,
    NotIncreasing,
    NotLSC,
    NotLSCRelation,
    NotOpenForm,
    NotOpenRelation,
    NotUSC,
    ParseError,
    SelectraError,
    SubdivisionLimitExceeded,
    UnsupportedDim,
    UnsupportedForm,
    ValidationError,
)
from .instances import (
    canonical_json,
    certificate_to_obj,
    complex_to_obj,
    cover_to_obj,
    load_document,
    plmap_to_obj,
    serialize_document,
)
from .rational import format_scalar, parse_rational
from .relations import (
    ConvexCellRelation,
    IndexedCover,
    ScalarCellField,
    classify_scalar,
    is_increasing_cover,
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
from .verification import Sampler, equivalence_suite, oracle_lsc, oracle_open

PROPERTY_FALSE_ERRORS = (
    NotOpenRelation, NotLSCRelation, NotUSC, NotLSC, GapViolated,
    NotACover, NotIncreasing, NotASelectionOnA, SubdivisionLimitExceeded,
    EmptyInterval, NonConvexUnion, NotOpenForm, EngineError,
)

INPUT_ERRORS = (ParseError, ValidationError, NotDisjoint, UnsupportedDim,
                UnsupportedForm, OSError, KeyError)


def _default_seed() -> int:
    return int(os.environ.get("SELECTRA_SEED", str(acceptance.DEFAULT_SEED)))


def _write_atomic(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        _write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


def _need_field(doc, name, kinds):
    if name is None:
        raise ValidationError("--field is required for this subcommand")
    if name not in doc.fields:
        raise ValidationError("no field named %r in the instance" % name)
    if doc.field_kinds[name] not in kinds:
        raise ValidationError("field %r has kind %r, expected one of %s"
                              % (name, doc.field_kinds[name], list(kinds)))
    return doc.fields[name]


def _need_subcomplex(doc, name):
    if name is None:
        raise ValidationError("--subcomplex is required for this subcommand")
    if name not in doc.subcomplexes:
        raise ValidationError("no subcomplex named %r" % name)
    return doc.subcomplexes[name]


# ---------------------------------------------------------------------------
# Subcommand bodies
# ---------------------------------------------------------------------------

def cmd_classify(args) -> int:
    doc = load_document(args.input)
    field = _need_field(doc, args.field,
                        ("scalar", "interval", "polytope", "cover"))
    kind = doc.field_kinds[args.field]
    out = {"field": args.field, "kind": kind}
    ok = True
    if kind == "scalar":
        verdict = classify_scalar(field)
        out["is_usc"] = verdict.is_usc
        out["is_lsc"] = verdict.is_lsc
        ok = verdict.is_usc or verdict.is_lsc
        if verdict.usc_witness:
            out["usc_witness"] = [cell_id(c) for c in verdict.usc_witness]
        if verdict.lsc_witness:
            out["lsc_witness"] = [cell_id(c) for c in verdict.lsc_witness]
    elif kind == "cover":
        out["is_increasing"] = is_increasing_cover(field)
        out["order"] = field.order
        ok = out["is_increasing"]
    else:
        lsc = is_lsc_relation(field)
        out["is_lsc"] = lsc.holds
        ok = lsc.holds
        if lsc.witness:
            out["lsc_witness"] = lsc.witness.to_json()
        if all(bd.is_open_form(field[c]) for c in field.complex.cells):
            open_v = is_open_relation(field)
            out["is_open"] = open_v.holds
            ok = ok and open_v.holds
            if open_v.witness:
                out["open_witness"] = open_v.witness.to_json()
        else:
            out["is_open"] = None   # closed forms: openness not applicable
    _emit(args, canonical_json(out))
    return 0 if ok else 1


def cmd_insert(args) -> int:
    doc = load_document(args.input)
    xi = _need_field(doc, args.field, ("scalar",))
    if args.field2 is None:
        raise ValidationError("--field2 (the upper bound) is required")
    eta = _need_field(doc, args.field2, ("scalar",))
    res = insert(xi, eta)
    out = {"complex": complex_to_obj(doc.complex),
           "selection": plmap_to_obj(res.map),
           "certificate": certificate_to_obj(res.certificate)}
    _emit(args, canonical_json(out))
    return 0


def cmd_select(args) -> int:
    doc = load_document(args.input)
    rel = _need_field(doc, args.field, ("interval", "polytope"))
    res = select_pou(rel)
    out = {"complex": complex_to_obj(doc.complex),
           "selection": plmap_to_obj(res.map),
           "certificate": certificate_to_obj(res.certificate)}
    _emit(args, canonical_json(out))
    return 0


def cmd_michael(args) -> int:
    doc = load_document(args.input)
    rel = _need_field(doc, args.field, ("interval", "polytope"))
    tol = parse_rational(args.tol)
    res = select_michael(rel, tol, max_depth=args.max_depth)
    out = {"complex": complex_to_obj(res.map.complex),
           "selection": plmap_to_obj(res.map),
           "certificate": certificate_to_obj(res.certificate),
           "trace": [{"level": s.level, "rounds": s.rounds,
                      "sup_delta": format_scalar(s.sup_delta)}
                     for s in res.trace]}
    _emit(args, canonical_json(out))
    return 0


def cmd_extend(args) -> int:
    doc = load_document(args.input)
    rel = _need_field(doc, args.field, ("interval", "polytope"))
    a_cells = _need_subcomplex(doc, args.subcomplex)
    if doc.selection is None:
        raise ValidationError("instance must carry a 'selection' for g")
    g = {vid: doc.selection.values[vid]
         for c in a_cells for vid in c}
    res = extend_selection(rel, sorted(a_cells), g, max_depth=args.max_depth)
    out = {"complex": complex_to_obj(res.map.complex),
           "selection": plmap_to_obj(res.map),
           "certificate": certificate_to_obj(res.certificate)}
    _emit(args, canonical_json(out))
    return 0


def cmd_refine(args) -> int:
    doc = load_document(args.input)
    cover = _need_field(doc, args.field, ("cover",))
    res = refine_countable(cover)
    out = {"complex": complex_to_obj(res.cover.complex),
           "refinement": cover_to_obj(res.cover),
           "order_bound": res.order_bound,
           "guaranteed_bound": res.guaranteed_bound,
           "selection": plmap_to_obj(res.map)}
    _emit(args, canonical_json(out))
    return 0


def cmd_refine_c0(args) -> int:
    doc = load_document(args.input)
    cover = _need_field(doc, args.field, ("cover",))
    res = refine_c0(cover, max_depth=args.max_depth)
    out = {"complex": complex_to_obj(res.cover.complex),
           "refinement": cover_to_obj(res.cover),
           "selection": plmap_to_obj(res.map),
           "assignment": {str(v): k for v, k in sorted(res.assignment.items())}}
    _emit(args, canonical_json(out))
    return 0


def cmd_lift(args) -> int:
    doc = load_document(args.input)
    rel = _need_field(doc, args.field, ("interval", "polytope"))
    if doc.product_of is None:
        raise ValidationError("instance must declare 'product_of' for lift")
    left_dim, right_dim = doc.product_of
    prod = _product_view(doc.complex, left_dim, right_dim)
    lifted = lift_product(prod, rel)
    out = {"complex": complex_to_obj(doc.complex),
           "selection": plmap_to_obj(lifted.map),
           "certificate": certificate_to_obj(lifted.certificate),
           "modulus": format_scalar(lifted.modulus)}
    _emit(args, canonical_json(out))
    return 0


def _product_view(K, left_dim: int, right_dim: int):
    from .complex_core import PLMap, ProductComplex, SimplicialComplex

    left = SimplicialComplex(left_dim, tuple(p[:left_dim] for p in K.vertices),
                             frozenset((v,) for v in K.used_vertices))
    right = SimplicialComplex(right_dim, tuple(p[left_dim:] for p in K.vertices),
                              frozenset((v,) for v in K.used_vertices))
    proj_l = PLMap(K, left_dim, tuple(p[:left_dim] for p in K.vertices))
    proj_r = PLMap(K, right_dim, tuple(p[left_dim:] for p in K.vertices))
    pairs = tuple((v, v) for v in range(len(K.vertices)))
    return ProductComplex(K, left, right, pairs, proj_l, proj_r)


def cmd_separate(args) -> int:
    doc = load_document(args.input)
    a_cells = _need_subcomplex(doc, args.subcomplex)
    if args.subcomplex2 is None:
        raise ValidationError("--subcomplex2 is required")
    b_cells = _need_subcomplex(doc, args.subcomplex2)
    res = separate_sets(doc.complex, sorted(a_cells), sorted(b_cells))
    out = {"complex": complex_to_obj(doc.complex),
           "selection": plmap_to_obj(res.map),
           "certificate": certificate_to_obj(res.certificate)}
    _emit(args, canonical_json(out))
    return 0


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.input:
        doc = load_document(args.input)
        rel = _need_field(doc, args.field, ("interval", "polytope"))
        sampler = Sampler(seed=seed, samples=args.samples)
        checks = []
        lsc_verdict = is_lsc_relation(rel).holds
        lsc_oracle = oracle_lsc(rel, sampler)
        checks.append(("lsc", lsc_verdict, lsc_oracle.passed))
        if all(bd.is_open_form(rel[c]) for c in rel.complex.cells):
            open_verdict = is_open_relation(rel).holds
            open_oracle = oracle_open(rel, sampler)
            checks.append(("open", open_verdict, open_oracle.passed))
        out = {"checks": [{"name": n, "classifier": c, "oracle": o,
                           "agree": c == o} for n, c, o in checks]}
        _emit(args, canonical_json(out))
        ok = all(c == o for _, c, o in checks)
        for name, c, o in checks:
            print("%-5s classifier=%s oracle=%s %s"
                  % (name, c, o, "agree" if c == o else "DISAGREE"),
                  file=sys.stderr)
        return 0 if ok and all(c for _, c, _ in checks) else 1

    outcomes = acceptance.run_all(seed, echo=lambda line: print(line, flush=True))
    suite = equivalence_suite(seed, instances=25)
    for line in suite.summary_lines():
        print(line)
    payload = "".join(o.report.to_json() for o in outcomes) + suite.to_json()
    if args.output:
        _write_atomic(args.output, payload)
    ok = all(o.passed for o in outcomes) and suite.passed
    return 0 if ok else 1


def cmd_demo(args) -> int:
    from . import demo as demo_module

    return demo_module.run(args.out_dir)


def cmd_plot(args) -> int:
    from .plotting import render_csv, render_svg

    doc = load_document(args.input)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.format == "csv":
        text = render_csv(doc.complex, doc.selection, seed=seed,
                          samples=args.samples)
        _emit(args, text)
        return 0
    if args.format == "json":
        _emit(args, serialize_document(doc))
        return 0
    lower = upper = relation = None
    if args.field is not None and args.field2 is not None:
        lower = _need_field(doc, args.field, ("scalar",))
        upper = _need_field(doc, args.field2, ("scalar",))
    elif args.field is not None:
        relation = _need_field(doc, args.field, ("interval", "polytope"))
    text = render_svg(doc.complex, doc.selection, lower, upper, relation)
    _emit(args, text)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selectra",
        description="Exact selections, insertions and refinements for "
                    "cellwise convex relations on finite simplicial complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("-i", "--input", required=True, help="instance JSON")
        p.add_argument("-o", "--output", help="output path (default stdout)")

    p = sub.add_parser("classify", help="semicontinuity / openness verdicts")
    common(p)
    p.add_argument("--field", required=True)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("insert", help="strict PL insertion xi < f < eta")
    common(p)
    p.add_argument("--field", required=True, help="the u.s.c. lower bound")
    p.add_argument("--field2", required=True, help="the l.s.c. upper bound")
    p.set_defaults(fn=cmd_insert)

    p = sub.add_parser("select", help="POU selection of an open relation")
    common(p)
    p.add_argument("--field", required=True)
    p.set_defaults(fn=cmd_select)

    p = sub.add_parser("michael", help="iterative selection of a closed l.s.c. relation")
    common(p)
    p.add_argument("--field", required=True)
    p.add_argument("--tol", default="1/64", help="rational tolerance (default 1/64)")
    p.add_argument("--max-depth", type=int, default=12)
    p.set_defaults(fn=cmd_michael)

    p = sub.add_parser("extend", help="extend the instance selection from a subcomplex")
    common(p)
    p.add_argument("--field", required=True)
    p.add_argument("--subcomplex", required=True)
    p.add_argument("--max-depth", type=int, default=12)
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("refine", help="order-bounded refinement of an increasing cover")
    common(p)
    p.add_argument("--field", required=True)
    p.set_defaults(fn=cmd_refine)

    p = sub.add_parser("refine-c0", help="refinement via the coordinate-threshold selection")
    common(p)
    p.add_argument("--field", required=True)
    p.add_argument("--max-depth", type=int, default=12)
    p.set_defaults(fn=cmd_refine_c0)

    p = sub.add_parser("lift", help="curried selection on a product instance")
    common(p)
    p.add_argument("--field", required=True)
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("separate", help="PL separation of two disjoint subcomplexes")
    common(p)
    p.add_argument("--subcomplex", required=True)
    p.add_argument("--subcomplex2", required=True)
    p.set_defaults(fn=cmd_separate)

    p = sub.add_parser("verify", help="acceptance battery, or oracle run on an instance")
    p.add_argument("-i", "--input", help="optional instance JSON")
    p.add_argument("-o", "--output", help="report output path")
    p.add_argument("--field", help="relation field (with -i)")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("demo", help="run the worked examples")
    p.add_argument("--out-dir", help="write example outputs here")
    p.set_defaults(fn=cmd_demo)

    p = sub.add_parser("plot", help="deterministic SVG / CSV rendering")
    common(p)
    p.add_argument("--field", help="interval relation, or lower scalar bound")
    p.add_argument("--field2", help="upper scalar bound")
    p.add_argument("--format", choices=("svg", "csv", "json"), default="svg")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(fn=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PROPERTY_FALSE_ERRORS as exc:
        witness = getattr(exc, "witness", None)
        msg = {"error": type(exc).__name__, "message": str(exc)}
        if witness is not None and hasattr(witness, "to_json"):
            msg["witness"] = witness.to_json()
        _emit(args, canonical_json(msg))
        print("property false: %s" % exc, file=sys.stderr)
        return 1
    except INPUT_ERRORS as exc:
        print("invalid input: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
