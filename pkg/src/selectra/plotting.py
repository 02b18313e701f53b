"""Static SVG and CSV emission for instances and engine outputs.

SVG is hand-assembled with a fixed 800x600 viewport, sorted elements and
exact fixed-point coordinates (rationals quantized to 1/100 pixel), so the
output is deterministic byte-for-byte.  Base complexes of dimension 1 get
envelope bands (scalar pairs or interval relations) and the selection
curve; dimension 2 gets the filled wireframe with optional vertex labels.
CSV dumps sampled values at seeded barycentric points for any dimension.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .complex_core import PLMap, SimplicialComplex, cell_id
from .errors import UnsupportedDim
from .rational import format_scalar, is_finite
from .relations import ConvexCellRelation, ScalarCellField

WIDTH = 800
HEIGHT = 600
MARGIN = 60

ZERO = Fraction(0)


def _px(value: Fraction) -> str:
    q = round(value * 100)
    sign = "-" if q < 0 else ""
    q = abs(q)
    return "%s%d.%02d" % (sign, q // 100, q % 100)


class _Frame:
    def __init__(self, xs, ys):
        xlo, xhi = min(xs), max(xs)
        ylo, yhi = min(ys), max(ys)
        if xhi == xlo:
            xhi = xlo + 1
        if yhi == ylo:
            yhi = ylo + 1
        pad_x = (xhi - xlo) / 20
        pad_y = (yhi - ylo) / 20
        self.xlo, self.xhi = xlo - pad_x, xhi + pad_x
        self.ylo, self.yhi = ylo - pad_y, yhi + pad_y

    def xf(self, v: Fraction) -> Fraction:
        t = (v - self.xlo) / (self.xhi - self.xlo)
        return MARGIN + t * (WIDTH - 2 * MARGIN)

    def yf(self, v: Fraction) -> Fraction:
        t = (v - self.ylo) / (self.yhi - self.ylo)
        return HEIGHT - MARGIN - t * (HEIGHT - 2 * MARGIN)

    def x(self, v: Fraction) -> str:
        return _px(self.xf(v))

    def y(self, v: Fraction) -> str:
        return _px(self.yf(v))


def _svg(elements: list[str]) -> str:
    head = ('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
            'viewBox="0 0 %d %d">' % (WIDTH, HEIGHT, WIDTH, HEIGHT))
    return "\n".join([head] + elements + ["</svg>"]) + "\n"


def _finite_or(value, fallback: Fraction) -> Fraction:
    return value if is_finite(value) else fallback


def render_svg(K: SimplicialComplex,
               selection: Optional[PLMap] = None,
               lower: Optional[ScalarCellField] = None,
               upper: Optional[ScalarCellField] = None,
               relation: Optional[ConvexCellRelation] = None) -> str:
    """Deterministic SVG of a d <= 2 instance with optional overlays."""
    if K.dim_ambient == 1:
        return _render_1d(K, selection, lower, upper, relation)
    if K.dim_ambient == 2:
        return _render_2d(K, selection)
    raise UnsupportedDim("svg rendering supports ambient dimension <= 2")


def _render_1d(K, selection, lower, upper, relation) -> str:
    xs = [p[0] for p in K.vertices]
    ys = [ZERO]
    band_cells = []
    for c in K.cells:
        lo_v = hi_v = None
        if lower is not None and upper is not None:
            lo_v, hi_v = lower[c], upper[c]
        elif relation is not None and relation.target_dim == 1:
            ax = relation[c].axes[0]
            lo_v, hi_v = ax.lo, ax.hi
        if lo_v is None:
            continue
        lo_f = _finite_or(lo_v, Fraction(-8))
        hi_f = _finite_or(hi_v, Fraction(8))
        ys.extend([lo_f, hi_f])
        band_cells.append((c, lo_f, hi_f))
    if selection is not None:
        ys.extend(v[0] for v in selection.values)
    frame = _Frame(xs, ys)
    parts = []
    for c, lo_f, hi_f in band_cells:
        px = [K.vertices[v][0] for v in c]
        xlo, xhi = min(px), max(px)
        if xlo == xhi:   # vertex cell: a thin tick of the band
            xlo, xhi = xlo - Fraction(1, 100), xhi + Fraction(1, 100)
        parts.append('<rect x="%s" y="%s" width="%s" height="%s" '
                     'fill="#b8d4f0" fill-opacity="0.5" stroke="none"/>'
                     % (frame.x(xlo), frame.y(hi_f),
                        _px(frame.xf(xhi) - frame.xf(xlo)),
                        _px(frame.yf(lo_f) - frame.yf(hi_f))))
    # base complex on the zero axis
    for c in K.cells:
        if len(c) == 2:
            parts.append('<line x1="%s" y1="%s" x2="%s" y2="%s" '
                         'stroke="#444444" stroke-width="2"/>'
                         % (frame.x(K.vertices[c[0]][0]), frame.y(ZERO),
                            frame.x(K.vertices[c[1]][0]), frame.y(ZERO)))
    for c in K.cells:
        if len(c) == 1:
            parts.append('<circle cx="%s" cy="%s" r="4" fill="#222222"/>'
                         % (frame.x(K.vertices[c[0]][0]), frame.y(ZERO)))
    if selection is not None and selection.target_dim == 1:
        pts = sorted((K.vertices[v][0], selection.values[v][0])
                     for v in K.used_vertices)
        path = " ".join("%s,%s" % (frame.x(x), frame.y(y)) for x, y in pts)
        parts.append('<polyline points="%s" fill="none" stroke="#c0392b" '
                     'stroke-width="2.5"/>' % path)
    return _svg(parts)


def _render_2d(K, selection) -> str:
    xs = [p[0] for p in K.vertices]
    ys = [p[1] for p in K.vertices]
    frame = _Frame(xs, ys)
    parts = []
    for c in K.cells:
        if len(c) == 3:
            pts = " ".join("%s,%s" % (frame.x(K.vertices[v][0]),
                                      frame.y(K.vertices[v][1])) for v in c)
            parts.append('<polygon points="%s" fill="#dce8f5" stroke="none"/>' % pts)
    for c in K.cells:
        if len(c) == 2:
            parts.append('<line x1="%s" y1="%s" x2="%s" y2="%s" '
                         'stroke="#444444" stroke-width="1.5"/>'
                         % (frame.x(K.vertices[c[0]][0]), frame.y(K.vertices[c[0]][1]),
                            frame.x(K.vertices[c[1]][0]), frame.y(K.vertices[c[1]][1])))
    for c in K.cells:
        if len(c) == 1:
            vid = c[0]
            parts.append('<circle cx="%s" cy="%s" r="3.5" fill="#222222"/>'
                         % (frame.x(K.vertices[vid][0]), frame.y(K.vertices[vid][1])))
            if selection is not None and selection.target_dim == 1:
                parts.append('<text x="%s" y="%s" font-size="12" '
                             'fill="#c0392b">%s</text>'
                             % (frame.x(K.vertices[vid][0]),
                                frame.y(K.vertices[vid][1]),
                                format_scalar(selection.values[vid][0])))
    return _svg(parts)


def render_csv(K: SimplicialComplex, selection: Optional[PLMap] = None,
               seed: int = 0, samples: int = 100) -> str:
    """Seeded barycentric sample dump; header plus one row per sample."""
    rnd = random.Random(seed)
    cols = ["cell"] + ["x%d" % i for i in range(K.dim_ambient)]
    if selection is not None:
        cols += ["f%d" % i for i in range(selection.target_dim)]
    rows = [",".join(cols)]
    cells = K.cells
    for _ in range(samples):
        cell = cells[rnd.randrange(len(cells))]
        weights = [Fraction(rnd.randint(1, 8)) for _ in cell]
        total = sum(weights)
        bary = [w / total for w in weights]
        point = tuple(sum(b * K.vertices[v][i] for v, b in zip(cell, bary))
                      for i in range(K.dim_ambient))
        row = [cell_id(cell)] + [str(format_scalar(c)) for c in point]
        if selection is not None:
            value = selection.evaluate_barycentric(cell, bary)
            row += [str(format_scalar(c)) for c in value]
        rows.append(",".join(row))
    return "\n".join(rows) + "\n"
