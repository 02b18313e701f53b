"""Instance documents: the JSON interchange format and its canonical form.

One JSON object describes a complex plus named fields over its cells:

* ``complex``: ambient dimension, vertex coordinates, maximal simplices;
* ``fields``: name -> {kind, values keyed by cell id}, with kinds
  ``scalar`` | ``interval`` | ``polytope`` | ``finite_set`` | ``cover``;
* optional ``subcomplexes`` (name -> maximal cells), ``selection`` (vertex
  values of a PL map) and ``product_of`` (ambient split of a product).

Rationals travel as integers or "p/q" strings (q > 0, gcd 1); infinities as
"inf" / "-inf"; floats are rejected.  Serialization is canonical: sorted
keys, compact separators, reduced rationals, one trailing newline, so
parse-serialize round trips are byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import bodies as bd
from .complex_core import (
    Cell,
    PLMap,
    SimplicialComplex,
    build_complex,
    cell_id,
    parse_cell_id,
)
from .errors import ParseError, ValidationError
from .rational import format_scalar, is_finite, parse_rational, parse_scalar
from .relations import (
    ConvexCellRelation,
    FiniteSetCellField,
    IndexedCover,
    ScalarCellField,
)

FIELD_KINDS = ("scalar", "interval", "polytope", "finite_set", "cover")


@dataclass
class InstanceDocument:
    complex: SimplicialComplex
    fields: dict = field(default_factory=dict)        # name -> typed field
    field_kinds: dict = field(default_factory=dict)   # name -> kind tag
    subcomplexes: dict = field(default_factory=dict)  # name -> frozenset[Cell]
    selection: Optional[PLMap] = None
    product_of: Optional[tuple] = None                # (left_dim, right_dim)


# ---------------------------------------------------------------------------
# Bodies <-> JSON
# ---------------------------------------------------------------------------

def body_to_json(body) -> dict:
    if isinstance(body, bd.Box):
        if len(body.axes) == 1:
            ax = body.axes[0]
            if ax.lo_strict and ax.hi_strict:
                return {"form": "open_interval", "lo": format_scalar(ax.lo),
                        "hi": format_scalar(ax.hi)}
            closed_lo = not is_finite(ax.lo) or not ax.lo_strict
            closed_hi = not is_finite(ax.hi) or not ax.hi_strict
            if closed_lo and closed_hi:
                return {"form": "closed_interval", "lo": format_scalar(ax.lo),
                        "hi": format_scalar(ax.hi)}
            return {"form": "interval", "lo": format_scalar(ax.lo),
                    "hi": format_scalar(ax.hi),
                    "lo_strict": ax.lo_strict, "hi_strict": ax.hi_strict}
        return {"form": "box",
                "axes": [{"lo": format_scalar(ax.lo), "hi": format_scalar(ax.hi),
                          "lo_strict": ax.lo_strict, "hi_strict": ax.hi_strict}
                         for ax in body.axes]}
    if isinstance(body, bd.HPolytope):
        return {"form": "h_polytope",
                "halfspaces": [{"a": [format_scalar(c) for c in normal],
                                "b": format_scalar(rhs)}
                               for normal, rhs in body.halfspaces]}
    if isinstance(body, bd.VPolytope):
        return {"form": "v_polytope",
                "vertices": [[format_scalar(c) for c in p] for p in body.points]}
    if isinstance(body, bd.Fattened):
        return {"form": "fattened", "base": body_to_json(body.base),
                "radius": format_scalar(body.radius), "strict": body.strict}
    raise ValidationError("unknown body type %r" % type(body).__name__)


def body_from_json(obj, location: str = "body"):
    try:
        form = obj["form"]
    except (TypeError, KeyError):
        raise ValidationError("missing body form", location)
    try:
        if form == "open_interval":
            return bd.open_interval(parse_scalar(obj["lo"]), parse_scalar(obj["hi"]))
        if form == "closed_interval":
            return bd.closed_interval(parse_scalar(obj["lo"]), parse_scalar(obj["hi"]))
        if form == "interval":
            return bd.interval(parse_scalar(obj["lo"]), parse_scalar(obj["hi"]),
                               bool(obj["lo_strict"]), bool(obj["hi_strict"]))
        if form == "box":
            axes = tuple(bd.AxisInterval(parse_scalar(ax["lo"]), parse_scalar(ax["hi"]),
                                         bool(ax["lo_strict"]), bool(ax["hi_strict"]))
                         for ax in obj["axes"])
            return bd.Box(axes)
        if form == "h_polytope":
            return bd.h_polytope([(tuple(parse_rational(c) for c in hs["a"]),
                                   parse_rational(hs["b"]))
                                  for hs in obj["halfspaces"]])
        if form == "v_polytope":
            return bd.v_polytope([[parse_rational(c) for c in p]
                                  for p in obj["vertices"]])
        if form == "fattened":
            base = body_from_json(obj["base"], location)
            if not isinstance(base, bd.VPolytope):
                raise ValidationError("fattened base must be a v_polytope", location)
            return bd.Fattened(base, parse_rational(obj["radius"]),
                               bool(obj["strict"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError("bad body: %s" % exc, location)
    raise ValidationError("unknown body form %r" % form, location)


# ---------------------------------------------------------------------------
# Parse
# ---------------------------------------------------------------------------

def parse_document(text: str) -> InstanceDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc.msg, line=exc.lineno, col=exc.colno)
    if not isinstance(obj, dict):
        raise ParseError("instance document must be a JSON object")
    return document_from_obj(obj)


def load_document(path: str) -> InstanceDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())


def document_from_obj(obj: dict) -> InstanceDocument:
    try:
        cobj = obj["complex"]
        dim = int(cobj["dim"])
        vertices = [[parse_rational(c) for c in p] for p in cobj["vertices"]]
        simplices = [tuple(int(v) for v in s) for s in cobj["simplices"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError("bad complex: %s" % exc, "complex")
    if any(len(p) != dim for p in vertices):
        raise ValidationError("vertex dimension mismatch", "complex.vertices")
    try:
        K = build_complex(vertices, simplices)
    except Exception as exc:
        raise ValidationError("invalid complex: %s" % exc, "complex")

    doc = InstanceDocument(K)
    for name, fobj in sorted((obj.get("fields") or {}).items()):
        doc.fields[name] = _field_from_obj(K, name, fobj)
        doc.field_kinds[name] = fobj["kind"]
    for name, cells in sorted((obj.get("subcomplexes") or {}).items()):
        try:
            parsed = [parse_cell_id(c) for c in cells]
        except ValueError as exc:
            raise ValidationError("bad cell id: %s" % exc, "subcomplexes.%s" % name)
        for c in parsed:
            if not K.has_cell(c):
                raise ValidationError("unknown cell %s" % cell_id(c),
                                      "subcomplexes.%s" % name)
        doc.subcomplexes[name] = K.closure_cells(parsed)
    sel = obj.get("selection")
    if sel is not None:
        try:
            n = int(sel["target_dim"])
            values = [tuple(Fraction(0) for _ in range(n))] * len(K.vertices)
            values = list(values)
            for key, val in sel["values"].items():
                vid = int(key)
                if vid < 0 or vid >= len(K.vertices):
                    raise ValidationError("selection vertex %d out of range" % vid,
                                          "selection")
                values[vid] = tuple(parse_rational(c) for c in val)
            doc.selection = PLMap(K, n, tuple(values))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("bad selection: %s" % exc, "selection")
    prod = obj.get("product_of")
    if prod is not None:
        try:
            doc.product_of = (int(prod["left_dim"]), int(prod["right_dim"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("bad product_of: %s" % exc, "product_of")
        if sum(doc.product_of) != K.dim_ambient:
            raise ValidationError("product split does not match ambient dimension",
                                  "product_of")
    return doc


def _field_from_obj(K: SimplicialComplex, name: str, fobj):
    loc = "fields.%s" % name
    try:
        kind = fobj["kind"]
        values = fobj["values"]
    except (KeyError, TypeError):
        raise ValidationError("field needs kind and values", loc)
    if kind not in FIELD_KINDS:
        raise ValidationError("unknown field kind %r" % kind, loc)
    parsed = {}
    for key, val in values.items():
        try:
            c = parse_cell_id(key)
        except ValueError:
            raise ValidationError("bad cell id %r" % key, loc)
        if not K.has_cell(c):
            raise ValidationError("unknown cell %s" % key, loc)
        parsed[c] = val
    missing = [c for c in K.cells if c not in parsed]
    if missing:
        raise ValidationError("missing value for cell %s" % cell_id(missing[0]), loc)
    try:
        if kind == "scalar":
            return ScalarCellField(K, {c: parse_scalar(v) for c, v in parsed.items()})
        if kind in ("interval", "polytope"):
            bodies = {c: body_from_json(v, "%s.%s" % (loc, cell_id(c)))
                      for c, v in parsed.items()}
            dims = {bd.body_dim(b) for b in bodies.values()}
            if len(dims) != 1:
                raise ValidationError("mixed body dimensions", loc)
            if kind == "interval":
                for c, b in bodies.items():
                    if not (isinstance(b, bd.Box) and len(b.axes) == 1):
                        raise ValidationError("non-interval body on cell %s"
                                              % cell_id(c), loc)
            return ConvexCellRelation(K, dims.pop(), bodies)
        if kind == "finite_set":
            pts = {c: tuple(tuple(parse_rational(x) for x in p) for p in v)
                   for c, v in parsed.items()}
            dims = {len(p) for ps in pts.values() for p in ps}
            if len(dims) != 1:
                raise ValidationError("mixed point dimensions", loc)
            return FiniteSetCellField(K, dims.pop(), pts)
        # cover
        size = int(fobj["size"])
        members = []
        for k in range(size):
            members.append(frozenset(c for c, ks in parsed.items() if k in ks))
        return IndexedCover(K, tuple(members))
    except ValidationError:
        raise
    except Exception as exc:
        raise ValidationError("invalid %s field: %s" % (kind, exc), loc)


# ---------------------------------------------------------------------------
# Serialize
# ---------------------------------------------------------------------------

def document_to_obj(doc: InstanceDocument) -> dict:
    K = doc.complex
    obj = {
        "complex": {
            "dim": K.dim_ambient,
            "vertices": [[format_scalar(c) for c in p] for p in K.vertices],
            "simplices": [list(c) for c in K.maximal_cells],
        }
    }
    if doc.fields:
        fields = {}
        for name in sorted(doc.fields):
            fields[name] = _field_to_obj(doc.fields[name], doc.field_kinds[name])
        obj["fields"] = fields
    if doc.subcomplexes:
        subs = {}
        for name in sorted(doc.subcomplexes):
            cells = doc.subcomplexes[name]
            maximal = [c for c in sorted(cells)
                       if not any(set(c) < set(d) for d in cells)]
            subs[name] = [cell_id(c) for c in maximal]
        obj["subcomplexes"] = subs
    if doc.selection is not None:
        obj["selection"] = {
            "target_dim": doc.selection.target_dim,
            "values": {str(v): [format_scalar(c) for c in doc.selection.values[v]]
                       for v in doc.complex.used_vertices},
        }
    if doc.product_of is not None:
        obj["product_of"] = {"left_dim": doc.product_of[0],
                             "right_dim": doc.product_of[1]}
    return obj


def _field_to_obj(value, kind: str) -> dict:
    if kind == "scalar":
        return {"kind": "scalar",
                "values": {cell_id(c): format_scalar(v)
                           for c, v in sorted(value.values.items())}}
    if kind in ("interval", "polytope"):
        return {"kind": kind,
                "values": {cell_id(c): body_to_json(value[c])
                           for c in value.complex.cells}}
    if kind == "finite_set":
        return {"kind": "finite_set",
                "values": {cell_id(c): [[format_scalar(x) for x in p]
                                        for p in value.values[c]]
                           for c in value.complex.cells}}
    if kind == "cover":
        return {"kind": "cover", "size": value.size,
                "values": {cell_id(c): value.indices_of(c)
                           for c in value.complex.cells}}
    raise ValidationError("unknown field kind %r" % kind)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def serialize_document(doc: InstanceDocument) -> str:
    return canonical_json(document_to_obj(doc))


def plmap_to_obj(f: PLMap) -> dict:
    return {"target_dim": f.target_dim,
            "values": {str(v): [format_scalar(c) for c in f.values[v]]
                       for v in f.complex.used_vertices}}


def certificate_to_obj(cert) -> dict:
    obj = {"kind": cert.kind,
           "cells": {cell_id(c): [[vid, format_scalar(val)] for vid, val in rows]
                     for c, rows in sorted(cert.vertex_evidence.items())}}
    if cert.tolerance is not None:
        obj["tolerance"] = format_scalar(cert.tolerance)
    if cert.kind == "strict":
        obj["min_margin"] = format_scalar(cert.min_margin)
    else:
        obj["max_distance"] = format_scalar(cert.max_distance)
    return obj


def cover_to_obj(cover: IndexedCover) -> dict:
    return {"kind": "cover", "size": cover.size,
            "values": {cell_id(c): cover.indices_of(c)
                       for c in cover.complex.cells}}


def complex_to_obj(K: SimplicialComplex) -> dict:
    return {"dim": K.dim_ambient,
            "vertices": [[format_scalar(c) for c in p] for p in K.vertices],
            "simplices": [list(c) for c in K.maximal_cells]}
