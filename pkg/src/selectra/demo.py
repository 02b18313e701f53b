"""Worked examples for every engine, runnable as `selectra demo`.

Each example builds a small instance, runs one engine, prints a one-line
summary, and (optionally) writes the canonical output document.  They
double as smoke documentation: the printed values are the ones a reader
can verify by hand.
"""

from __future__ import annotations

import os
from fractions import Fraction

from . import bodies as bd
from .complex_core import product_complex, segment_complex
from .instances import (
    canonical_json,
    certificate_to_obj,
    complex_to_obj,
    cover_to_obj,
    plmap_to_obj,
)
from .rational import NEG_INF, POS_INF, format_scalar
from .relations import (
    ConvexCellRelation,
    IndexedCover,
    ScalarCellField,
    separation_gadget,
)
from .selection_engines import (
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


def _scalar_map(f) -> str:
    return ", ".join("f(%s)=%s" % (format_scalar(f.complex.vertices[v][0]),
                                   format_scalar(f.values[v][0]))
                     for v in f.complex.used_vertices
                     if f.complex.vertices[v][0].denominator == 1)


def run(out_dir=None) -> int:
    outputs = {}

    K = segment_complex()

    sep = separate_sets(K, [V0], [V1])
    print("separate : segment, A={v0}, B={v1} -> %s" % _scalar_map(sep.map))
    outputs["separate"] = {"complex": complex_to_obj(K),
                           "selection": plmap_to_obj(sep.map),
                           "certificate": certificate_to_obj(sep.certificate)}

    xi = ScalarCellField(K, {V0: F(1), E: F(0), V1: F(0)})
    eta = ScalarCellField(K, {c: F(2) for c in K.cells})
    ins = insert(xi, eta)
    print("insert   : xi=(1,0,0), eta=2 -> %s (strict margins %s)"
          % (_scalar_map(ins.map), format_scalar(ins.certificate.min_margin)))
    outputs["insert"] = {"complex": complex_to_obj(K),
                         "selection": plmap_to_obj(ins.map),
                         "certificate": certificate_to_obj(ins.certificate)}

    rel = ConvexCellRelation(K, 1, {V0: bd.open_interval(0, 1),
                                    E: bd.open_interval(-1, 2),
                                    V1: bd.open_interval(0, 1)})
    sel = select_pou(rel)
    print("select   : P(v)=(0,1), P(e)=(-1,2) -> %s" % _scalar_map(sel.map))
    outputs["select"] = {"complex": complex_to_obj(K),
                         "selection": plmap_to_obj(sel.map),
                         "certificate": certificate_to_obj(sel.certificate)}

    closed = ConvexCellRelation(K, 1, {V0: bd.closed_interval(0, 0),
                                       E: bd.closed_interval(0, 1),
                                       V1: bd.closed_interval(1, 1)})
    mich = select_michael(closed, F(1, 64))
    print("michael  : P(v0)={0}, P(e)=[0,1], P(v1)={1}, tol=1/64 -> "
          "distance <= %s after %d steps"
          % (format_scalar(mich.certificate.max_distance), len(mich.trace)))
    outputs["michael"] = {"complex": complex_to_obj(mich.map.complex),
                          "selection": plmap_to_obj(mich.map),
                          "certificate": certificate_to_obj(mich.certificate),
                          "trace": [{"level": s.level, "rounds": s.rounds,
                                     "sup_delta": format_scalar(s.sup_delta)}
                                    for s in mich.trace]}

    const = ConvexCellRelation(K, 1, {c: bd.open_interval(0, 1) for c in K.cells})
    ext = extend_selection(const, [V0], {0: (F(3, 4),)})
    print("extend   : Phi=(0,1), g(v0)=3/4 -> f(v0)=%s, global margins %s"
          % (format_scalar(ext.map.values[0][0]),
             format_scalar(ext.certificate.min_margin)))
    outputs["extend"] = {"complex": complex_to_obj(ext.map.complex),
                         "selection": plmap_to_obj(ext.map),
                         "certificate": certificate_to_obj(ext.certificate)}

    cover = IndexedCover(K, (frozenset({E, V1}), frozenset({E, V1}),
                             frozenset(K.cells)))
    ref = refine_countable(cover)
    print("refine   : alpha=(2,0,0) -> order %d (bound %d), f endpoints %s"
          % (ref.order_bound, ref.guaranteed_bound,
             [format_scalar(ref.map.evaluate((F(t),))[0]) for t in (0, 1)]))
    outputs["refine"] = {"complex": complex_to_obj(ref.cover.complex),
                         "refinement": cover_to_obj(ref.cover),
                         "selection": plmap_to_obj(ref.map)}

    ref0 = refine_c0(cover)
    top = ref0.map.evaluate((F(0),))
    bottom = ref0.map.evaluate((F(1),))
    print("refine-c0: alpha=(2,0,0), m=3 -> f(0)=%s, f(1)=%s"
          % ([format_scalar(c) for c in top], [format_scalar(c) for c in bottom]))
    outputs["refine_c0"] = {"complex": complex_to_obj(ref0.cover.complex),
                            "refinement": cover_to_obj(ref0.cover),
                            "selection": plmap_to_obj(ref0.map)}

    prod = product_complex(K, K)
    prel = ConvexCellRelation(prod.complex, 1,
                              {c: bd.open_interval(0, 1)
                               for c in prod.complex.cells})
    lifted = lift_product(prod, prel)
    print("lift     : Phi=(0,1) on segment x segment -> g=1/2, modulus %s"
          % format_scalar(lifted.modulus))
    outputs["lift"] = {"complex": complex_to_obj(prod.complex),
                       "selection": plmap_to_obj(lifted.map),
                       "certificate": certificate_to_obj(lifted.certificate),
                       "modulus": format_scalar(lifted.modulus)}

    star_cover = IndexedCover(K, (frozenset({V0, E}), frozenset(K.cells)))
    pou = pou_from_cover(K, star_cover)
    checks = [pou.members[0].evaluate((F(t, 4),))[0] +
              pou.members[1].evaluate((F(t, 4),))[0] for t in range(5)]
    print("pou      : member(0)=star(v0) -> xi0+xi1=%s at 5 sample points"
          % format_scalar(checks[0]))
    outputs["pou"] = {"complex": complex_to_obj(pou.complex),
                      "pou": [plmap_to_obj(m) for m in pou.members]}

    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        for name, obj in sorted(outputs.items()):
            path = os.path.join(out_dir, "%s.json" % name)
            tmp = path + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                fh.write(canonical_json(obj))
            os.replace(tmp, path)
        print("wrote %d documents to %s" % (len(outputs), out_dir))
    return 0
