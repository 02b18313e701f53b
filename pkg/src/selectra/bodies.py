"""Convex bodies in Q^n under the l-infinity norm.

Five representations, all with exact rational data:

* ``Box``: a product of axis intervals, possibly unbounded, each endpoint
  independently open or closed.  n = 1 boxes double as the interval forms.
* ``HPolytope``: a *strict* halfspace intersection a.y < b, required
  nonempty and full-dimensional (an open body).
* ``VPolytope``: the convex hull of at most 32 rational points, n <= 3
  (a closed body; the stored points need not all be extreme).
* ``Fattened``: the set of points at l-inf distance < eps (or <= eps) from
  a VPolytope base; the open/closed l-inf neighbourhood.

The norm is fixed to l-infinity so that every ball, fattening and distance
below is polyhedral and every predicate decides exactly via the rational
simplex in :mod:`selectra.exactlp`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import EnumerationOverflow, UnsupportedForm
from .exactlp import lp_maximize, matrix_rank, solve_linear_system
from .rational import NEG_INF, POS_INF, ExtRat, is_finite, midpoint_rule

Point = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

MAX_VERTICES = 32
MAX_POLYTOPE_DIM = 3


# ---------------------------------------------------------------------------
# Forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxisInterval:
    lo: ExtRat
    hi: ExtRat
    lo_strict: bool
    hi_strict: bool

    def __post_init__(self):
        if not is_finite(self.lo) and not self.lo_strict:
            object.__setattr__(self, "lo_strict", True)
        if not is_finite(self.hi) and not self.hi_strict:
            object.__setattr__(self, "hi_strict", True)
        if self.lo > self.hi:
            raise ValueError("empty axis interval")
        if self.lo == self.hi and (self.lo_strict or self.hi_strict):
            raise ValueError("empty axis interval")

    @property
    def degenerate(self) -> bool:
        return is_finite(self.lo) and self.lo == self.hi


@dataclass(frozen=True)
class Box:
    axes: tuple

    def __post_init__(self):
        if not self.axes:
            raise ValueError("box needs at least one axis")


@dataclass(frozen=True)
class HPolytope:
    halfspaces: tuple   # of (normal: Point, rhs: Fraction), meaning a.y < b

    def __post_init__(self):
        if not self.halfspaces:
            raise ValueError("h-polytope needs at least one halfspace")


@dataclass(frozen=True)
class VPolytope:
    points: tuple

    def __post_init__(self):
        if not self.points:
            raise ValueError("v-polytope needs at least one point")
        if len(self.points) > MAX_VERTICES:
            raise EnumerationOverflow("more than %d polytope points" % MAX_VERTICES)
        if len(self.points[0]) > MAX_POLYTOPE_DIM:
            raise UnsupportedForm("v-polytopes limited to n <= %d" % MAX_POLYTOPE_DIM)


@dataclass(frozen=True)
class Fattened:
    base: VPolytope
    radius: Fraction
    strict: bool

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("fattening radius must be positive")


Body = Union[Box, HPolytope, VPolytope, Fattened]


# -- constructors -----------------------------------------------------------

def interval(lo, hi, lo_strict: bool, hi_strict: bool) -> Box:
    return Box((AxisInterval(_ext(lo), _ext(hi), lo_strict, hi_strict),))


def open_interval(lo, hi) -> Box:
    return interval(lo, hi, True, True)


def closed_interval(lo, hi) -> Box:
    lo, hi = _ext(lo), _ext(hi)
    return Box((AxisInterval(lo, hi, not is_finite(lo), not is_finite(hi)),))


def whole_line(n: int = 1) -> Box:
    return Box(tuple(AxisInterval(NEG_INF, POS_INF, True, True) for _ in range(n)))


def open_box(bounds: Sequence[tuple]) -> Box:
    return Box(tuple(AxisInterval(_ext(lo), _ext(hi), True, True) for lo, hi in bounds))


def closed_box(bounds: Sequence[tuple]) -> Box:
    axes = []
    for lo, hi in bounds:
        lo, hi = _ext(lo), _ext(hi)
        axes.append(AxisInterval(lo, hi, not is_finite(lo), not is_finite(hi)))
    return Box(tuple(axes))


def v_polytope(points: Sequence[Sequence]) -> VPolytope:
    pts = sorted({tuple(Fraction(c) for c in p) for p in points})
    return VPolytope(tuple(pts))


def h_polytope(halfspaces: Sequence[tuple]) -> HPolytope:
    """Validated open H-polytope: nonempty with a full-dimensional interior."""
    cleaned = []
    for normal, rhs in halfspaces:
        cleaned.append((tuple(Fraction(c) for c in normal), Fraction(rhs)))
    body = HPolytope(tuple(cleaned))
    if _hpolytope_inner_radius(body) <= 0:
        raise UnsupportedForm("open h-polytope must be nonempty and full-dimensional")
    return body


def _ext(v) -> ExtRat:
    if isinstance(v, float):
        if v in (POS_INF, NEG_INF):
            return v
        raise ValueError("finite endpoints must be rationals")
    return Fraction(v)


# ---------------------------------------------------------------------------
# Basic queries
# ---------------------------------------------------------------------------

def body_dim(body: Body) -> int:
    if isinstance(body, Box):
        return len(body.axes)
    if isinstance(body, HPolytope):
        return len(body.halfspaces[0][0])
    if isinstance(body, VPolytope):
        return len(body.points[0])
    if isinstance(body, Fattened):
        return len(body.base.points[0])
    raise UnsupportedForm(type(body).__name__)


def is_open_form(body: Body) -> bool:
    if isinstance(body, Box):
        return all((not is_finite(ax.lo) or ax.lo_strict) and
                   (not is_finite(ax.hi) or ax.hi_strict) for ax in body.axes)
    if isinstance(body, HPolytope):
        return True
    if isinstance(body, Fattened):
        return body.strict
    return False


def is_closed_form(body: Body) -> bool:
    if isinstance(body, Box):
        return all((not is_finite(ax.lo) or not ax.lo_strict) and
                   (not is_finite(ax.hi) or not ax.hi_strict) for ax in body.axes)
    if isinstance(body, VPolytope):
        return True
    if isinstance(body, Fattened):
        return not body.strict
    return False


def is_bounded(body: Body) -> bool:
    if isinstance(body, Box):
        return all(is_finite(ax.lo) and is_finite(ax.hi) for ax in body.axes)
    if isinstance(body, (VPolytope, Fattened)):
        return True
    if isinstance(body, HPolytope):
        return _hpolytope_bounded(body)
    raise UnsupportedForm(type(body).__name__)


# ---------------------------------------------------------------------------
# Membership, margins, distances
# ---------------------------------------------------------------------------

def membership(body: Body, y: Sequence) -> tuple[str, Optional[ExtRat]]:
    """Exact verdict 'inside' / 'boundary' / 'outside' with an inside margin.

    'inside' means interior of the body; the margin is a positive lower
    bound on the l-inf distance to the complement (POS_INF for the whole
    space).  'boundary' means in the body but not interior.
    """
    pt = tuple(Fraction(c) for c in y)
    if isinstance(body, Box):
        margin: ExtRat = POS_INF
        on_edge = False
        for ax, v in zip(body.axes, pt):
            if v < ax.lo or v > ax.hi:
                return "outside", None
            if v == ax.lo:
                if ax.lo_strict:
                    return "outside", None
                on_edge = True
            if v == ax.hi:
                if ax.hi_strict:
                    return "outside", None
                on_edge = True
            if not on_edge:
                if is_finite(ax.lo):
                    margin = min(margin, v - ax.lo)
                if is_finite(ax.hi):
                    margin = min(margin, ax.hi - v)
        if on_edge:
            return "boundary", None
        return "inside", margin
    if isinstance(body, HPolytope):
        margin = POS_INF
        for normal, rhs in body.halfspaces:
            val = _dot(normal, pt)
            if val >= rhs:
                return "outside", None
            weight = sum(abs(c) for c in normal)
            if weight > 0:
                margin = min(margin, (rhs - val) / weight)
        return "inside", margin
    if isinstance(body, VPolytope):
        if not _point_in_hull(pt, body.points):
            return "outside", None
        t = _hull_interior_radius(pt, body)
        if t > 0:
            return "inside", t
        return "boundary", None
    if isinstance(body, Fattened):
        d = dist_to_closure(body.base, pt)
        if d < body.radius:
            return "inside", body.radius - d
        if d == body.radius and not body.strict:
            return "boundary", None
        return "outside", None
    raise UnsupportedForm(type(body).__name__)


def in_body(body: Body, y: Sequence) -> bool:
    return membership(body, y)[0] != "outside"


def dist_to_closure(body: Body, y: Sequence) -> Fraction:
    """Exact l-infinity distance from y to the closure of the body."""
    pt = tuple(Fraction(c) for c in y)
    if isinstance(body, Box):
        worst = ZERO
        for ax, v in zip(body.axes, pt):
            if is_finite(ax.lo) and v < ax.lo:
                worst = max(worst, ax.lo - v)
            if is_finite(ax.hi) and v > ax.hi:
                worst = max(worst, v - ax.hi)
        return worst
    if isinstance(body, VPolytope):
        return _dist_to_hull(pt, body.points)
    if isinstance(body, Fattened):
        return max(ZERO, dist_to_closure(body.base, pt) - body.radius)
    if isinstance(body, HPolytope):
        n = body_dim(body)
        # minimize t subject to  a.z <= b,  |y_i - z_i| <= t ; vars (z, t)
        a_ub, b_ub = [], []
        for normal, rhs in body.halfspaces:
            a_ub.append(list(normal) + [ZERO])
            b_ub.append(rhs)
        for i in range(n):
            row = [ZERO] * (n + 1)
            row[i], row[n] = ONE, -ONE
            a_ub.append(list(row))
            b_ub.append(pt[i])
            row = [ZERO] * (n + 1)
            row[i], row[n] = -ONE, -ONE
            a_ub.append(list(row))
            b_ub.append(-pt[i])
        obj = [ZERO] * n + [-ONE]
        res = lp_maximize(obj, a_ub=a_ub, b_ub=b_ub)
        assert res.optimal, "distance LP must be solvable for a nonempty body"
        return -res.value
    raise UnsupportedForm(type(body).__name__)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def _point_in_hull(pt: Point, gens: Sequence[Point]) -> bool:
    n = len(pt)
    k = len(gens)
    a_eq = [[gens[j][i] for j in range(k)] for i in range(n)]
    b_eq = list(pt)
    a_eq.append([ONE] * k)
    b_eq.append(ONE)
    res = lp_maximize([ZERO] * k, a_eq=a_eq, b_eq=b_eq, nonneg=[True] * k)
    return res.status != "infeasible"


def _dist_to_hull(pt: Point, gens: Sequence[Point]) -> Fraction:
    n = len(pt)
    k = len(gens)
    # vars: lambda (k, >=0), t (>=0); minimize t with |pt - G lambda| <= t
    a_ub, b_ub = [], []
    for i in range(n):
        a_ub.append([-gens[j][i] for j in range(k)] + [-ONE])
        b_ub.append(-pt[i])
        a_ub.append([gens[j][i] for j in range(k)] + [-ONE])
        b_ub.append(pt[i])
    a_eq = [[ONE] * k + [ZERO]]
    b_eq = [ONE]
    res = lp_maximize([ZERO] * k + [-ONE], a_ub=a_ub, b_ub=b_ub,
                      a_eq=a_eq, b_eq=b_eq, nonneg=[True] * (k + 1))
    assert res.optimal
    return -res.value


def _hull_interior_radius(pt: Point, body: VPolytope) -> Fraction:
    """Largest t with the l-inf ball B(pt, t) inside the hull (0 if none)."""
    gens = body.points
    n = len(pt)
    if matrix_rank([[p[i] - gens[0][i] for i in range(n)] for p in gens[1:]]) < n:
        return ZERO
    corners = list(itertools.product((-ONE, ONE), repeat=n))
    k = len(gens)
    nvars = 1 + len(corners) * k  # t, then lambda blocks per corner
    a_eq, b_eq = [], []
    for ci, corner in enumerate(corners):
        base = 1 + ci * k
        for i in range(n):
            row = [ZERO] * nvars
            row[0] = -corner[i]
            for j in range(k):
                row[base + j] = gens[j][i]
            a_eq.append(row)
            b_eq.append(pt[i])
        row = [ZERO] * nvars
        for j in range(k):
            row[base + j] = ONE
        a_eq.append(row)
        b_eq.append(ONE)
    obj = [ZERO] * nvars
    obj[0] = ONE
    res = lp_maximize(obj, a_eq=a_eq, b_eq=b_eq, nonneg=[True] * nvars)
    if not res.optimal:
        return ZERO
    return max(ZERO, res.value)


# ---------------------------------------------------------------------------
# Support functionals and containment
# ---------------------------------------------------------------------------

def sup_support(body: Body, direction: Sequence[Fraction]) -> ExtRat:
    """sup of direction . y over the closure of the body; POS_INF if unbounded."""
    a = tuple(Fraction(c) for c in direction)
    if isinstance(body, Box):
        total = ZERO
        for coeff, ax in zip(a, body.axes):
            if coeff > 0:
                if not is_finite(ax.hi):
                    return POS_INF
                total += coeff * ax.hi
            elif coeff < 0:
                if not is_finite(ax.lo):
                    return POS_INF
                total += coeff * ax.lo
        return total
    if isinstance(body, VPolytope):
        return max(_dot(a, p) for p in body.points)
    if isinstance(body, Fattened):
        base = max(_dot(a, p) for p in body.base.points)
        return base + body.radius * sum(abs(c) for c in a)
    if isinstance(body, HPolytope):
        rows = [list(normal) for normal, _ in body.halfspaces]
        rhs = [b for _, b in body.halfspaces]
        res = lp_maximize(list(a), a_ub=rows, b_ub=rhs)
        if res.status == "unbounded":
            return POS_INF
        assert res.optimal
        return res.value
    raise UnsupportedForm(type(body).__name__)


def support_witness(body: Body, direction: Sequence[Fraction],
                    threshold: Fraction) -> Point:
    """A point of cl(body) with direction . point > threshold (must exist)."""
    a = tuple(Fraction(c) for c in direction)
    if isinstance(body, Box):
        coords: list[Optional[Fraction]] = []
        inf_axes = []
        finite_part = ZERO
        for i, (coeff, ax) in enumerate(zip(a, body.axes)):
            if coeff > 0:
                if is_finite(ax.hi):
                    coords.append(ax.hi)
                    finite_part += coeff * ax.hi
                else:
                    coords.append(None)
                    inf_axes.append((i, ONE, abs(coeff)))
            elif coeff < 0:
                if is_finite(ax.lo):
                    coords.append(ax.lo)
                    finite_part += coeff * ax.lo
                else:
                    coords.append(None)
                    inf_axes.append((i, -ONE, abs(coeff)))
            else:
                coords.append(midpoint_rule(ax.lo, ax.hi))
        if inf_axes:
            weight = sum(w for _, _, w in inf_axes)
            reach = max(ONE, (threshold - finite_part + 1) / weight)
            for i, sign, _ in inf_axes:
                base = ZERO
                ax = body.axes[i]
                if sign > 0 and is_finite(ax.lo):
                    base = max(ax.lo, ZERO)
                if sign < 0 and is_finite(ax.hi):
                    base = min(ax.hi, ZERO)
                coords[i] = base + sign * reach
        out = tuple(coords)
        assert _dot(a, out) > threshold
        return out
    if isinstance(body, VPolytope):
        best = max(body.points, key=lambda p: _dot(a, p))
        assert _dot(a, best) > threshold
        return best
    if isinstance(body, Fattened):
        best = max(body.base.points, key=lambda p: _dot(a, p))
        corner = tuple(body.radius if c > 0 else (-body.radius if c < 0 else ZERO)
                       for c in a)
        out = tuple(b + d for b, d in zip(best, corner))
        assert _dot(a, out) > threshold
        return out
    if isinstance(body, HPolytope):
        rows = [list(normal) for normal, _ in body.halfspaces]
        rhs = [b for _, b in body.halfspaces]
        res = lp_maximize(list(a), a_ub=rows, b_ub=rhs)
        if res.optimal:
            assert res.value > threshold
            return res.point
        gain = _dot(a, res.ray)
        t = max(ONE, (threshold - _dot(a, res.point) + 1) / gain)
        return tuple(p + t * r for p, r in zip(res.point, res.ray))
    raise UnsupportedForm(type(body).__name__)


def closure_halfspaces(body: Body):
    """Closed H-representation of cl(body), or None when only V-data exists."""
    if isinstance(body, Box):
        out = []
        n = len(body.axes)
        for i, ax in enumerate(body.axes):
            if is_finite(ax.hi):
                e = [ZERO] * n
                e[i] = ONE
                out.append((tuple(e), ax.hi))
            if is_finite(ax.lo):
                e = [ZERO] * n
                e[i] = -ONE
                out.append((tuple(e), -ax.lo))
        return out
    if isinstance(body, HPolytope):
        return [(normal, rhs) for normal, rhs in body.halfspaces]
    return None


def closure_candidates(body: Body) -> list[Point]:
    """Finitely many points whose hull is cl(body); body must be bounded."""
    if isinstance(body, Box):
        ranges = []
        for ax in body.axes:
            assert is_finite(ax.lo) and is_finite(ax.hi)
            ranges.append((ax.lo,) if ax.lo == ax.hi else (ax.lo, ax.hi))
        return [tuple(p) for p in itertools.product(*ranges)]
    if isinstance(body, VPolytope):
        return list(body.points)
    if isinstance(body, Fattened):
        r = body.radius
        return [tuple(g + c for g, c in zip(gen, corner))
                for gen in body.base.points
                for corner in itertools.product((-r, r), repeat=body_dim(body))]
    if isinstance(body, HPolytope):
        return hpolytope_vertices(body)
    raise UnsupportedForm(type(body).__name__)


def recession_ray(body: Body) -> Optional[Point]:
    """Some nonzero recession direction of cl(body), or None when bounded."""
    if isinstance(body, Box):
        n = len(body.axes)
        for i, ax in enumerate(body.axes):
            if not is_finite(ax.hi):
                ray = [ZERO] * n
                ray[i] = ONE
                return tuple(ray)
            if not is_finite(ax.lo):
                ray = [ZERO] * n
                ray[i] = -ONE
                return tuple(ray)
        return None
    if isinstance(body, (VPolytope, Fattened)):
        return None
    if isinstance(body, HPolytope):
        return _hpolytope_recession(body)
    raise UnsupportedForm(type(body).__name__)


def closure_contains(outer: Body, inner: Body):
    """Exact test cl(inner) subseteq cl(outer); returns (ok, witness).

    The witness, when present, is a point of cl(inner) outside cl(outer).
    For convex full-dimensional open bodies this decides A subseteq B, and
    for mixed forms it decides A subseteq cl(B); both classifier criteria
    reduce to it.
    """
    hs = closure_halfspaces(outer)
    if hs is not None:
        for normal, rhs in hs:
            s = sup_support(inner, normal)
            if isinstance(s, float) or s > rhs:
                return False, support_witness(inner, normal, rhs)
        return True, None
    # outer is VPolytope or Fattened, hence bounded
    if not is_bounded(inner):
        ray = recession_ray(inner)
        anchor = interior_point(inner)
        bound = _norm_bound(outer)
        idx = next(i for i, r in enumerate(ray) if r != 0)
        t = (bound + 1 + abs(anchor[idx])) / abs(ray[idx])
        return False, tuple(p + t * r for p, r in zip(anchor, ray))
    for cand in closure_candidates(inner):
        if isinstance(outer, VPolytope):
            if not _point_in_hull(cand, outer.points):
                return False, cand
        else:  # Fattened
            if dist_to_closure(outer.base, cand) > outer.radius:
                return False, cand
    return True, None


def _norm_bound(body: Body) -> Fraction:
    worst = ZERO
    for p in closure_candidates(body):
        for c in p:
            worst = max(worst, abs(c))
    return worst


# ---------------------------------------------------------------------------
# Interior points, closure, fattening
# ---------------------------------------------------------------------------

def interior_point(body: Body) -> Point:
    """Deterministic canonical point inside the body.

    Boxes take per-axis midpoints with the c+-1 rules at infinite ends;
    V-polytopes and fattened bases take the generator centroid; open
    H-polytopes solve the inner-radius LP.
    """
    if isinstance(body, Box):
        return tuple(midpoint_rule(ax.lo, ax.hi) for ax in body.axes)
    if isinstance(body, VPolytope):
        return _centroid(body.points)
    if isinstance(body, Fattened):
        return _centroid(body.base.points)
    if isinstance(body, HPolytope):
        res = _hpolytope_inner_lp(body)
        assert res.optimal and res.value > 0
        return res.point[:-1]
    raise UnsupportedForm(type(body).__name__)


def _centroid(points: Sequence[Point]) -> Point:
    k = Fraction(len(points))
    n = len(points[0])
    return tuple(sum(p[i] for p in points) / k for i in range(n))


def closure(body: Body) -> Body:
    """The topological closure, in closed form.

    Open H-polytopes become V-polytopes by exact vertex enumeration (n <= 3,
    at most 32 vertices, bounded); everything else closes endpoints.
    """
    if isinstance(body, Box):
        return Box(tuple(AxisInterval(ax.lo, ax.hi,
                                      not is_finite(ax.lo) and ax.lo_strict,
                                      not is_finite(ax.hi) and ax.hi_strict)
                         for ax in body.axes))
    if isinstance(body, VPolytope):
        return body
    if isinstance(body, Fattened):
        if not body.strict:
            return body
        return Fattened(body.base, body.radius, strict=False)
    if isinstance(body, HPolytope):
        return v_polytope(hpolytope_vertices(body))
    raise UnsupportedForm(type(body).__name__)


def fatten_body(body: Body, eps: Fraction, strict: bool) -> Body:
    """The eps-neighbourhood O_eps[body] under l-infinity.

    Boxes and intervals expand in closed form; V-polytopes wrap into the
    Fattened form.  Fattening an H-polytope or an already fattened body is
    unsupported.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("fattening radius must be positive")
    if isinstance(body, Box):
        axes = []
        for ax in body.axes:
            lo = ax.lo - eps if is_finite(ax.lo) else NEG_INF
            hi = ax.hi + eps if is_finite(ax.hi) else POS_INF
            axes.append(AxisInterval(lo, hi,
                                     strict if is_finite(lo) else True,
                                     strict if is_finite(hi) else True))
        return Box(tuple(axes))
    if isinstance(body, VPolytope):
        return Fattened(body, eps, strict)
    raise UnsupportedForm("cannot fatten a %s" % type(body).__name__)


# ---------------------------------------------------------------------------
# H-polytope internals
# ---------------------------------------------------------------------------

def _hpolytope_inner_lp(body: HPolytope):
    n = body_dim(body)
    a_ub, b_ub = [], []
    for normal, rhs in body.halfspaces:
        weight = sum(abs(c) for c in normal)
        a_ub.append(list(normal) + [weight])
        b_ub.append(rhs)
    row = [ZERO] * n + [ONE]
    a_ub.append(row)
    b_ub.append(ONE)   # cap the radius so the LP is bounded
    obj = [ZERO] * n + [ONE]
    return lp_maximize(obj, a_ub=a_ub, b_ub=b_ub)


def _hpolytope_inner_radius(body: HPolytope) -> Fraction:
    res = _hpolytope_inner_lp(body)
    if not res.optimal:
        return ZERO
    return res.value


def _hpolytope_recession(body: HPolytope) -> Optional[Point]:
    n = body_dim(body)
    rows = [list(normal) for normal, _ in body.halfspaces]
    rhs = [ZERO] * len(rows)
    cube = []
    for i in range(n):
        e = [ZERO] * n
        e[i] = ONE
        cube.append((list(e), ONE))
        cube.append(([-v for v in e], ONE))
    for i in range(n):
        for sign in (ONE, -ONE):
            obj = [ZERO] * n
            obj[i] = sign
            res = lp_maximize(obj, a_ub=rows + [c for c, _ in cube],
                              b_ub=rhs + [b for _, b in cube])
            if res.optimal and res.value > 0:
                return res.point
    return None


def _hpolytope_bounded(body: HPolytope) -> bool:
    return _hpolytope_recession(body) is None


def hpolytope_vertices(body: HPolytope) -> list[Point]:
    """Exact vertex enumeration of the closed polytope cl(body), n <= 3."""
    n = body_dim(body)
    if n > MAX_POLYTOPE_DIM:
        raise UnsupportedForm("vertex enumeration limited to n <= 3")
    if not _hpolytope_bounded(body):
        raise EnumerationOverflow("cannot enumerate vertices of an unbounded body")
    hs = body.halfspaces
    found = set()
    for combo in itertools.combinations(range(len(hs)), n):
        matrix = [list(hs[i][0]) for i in combo]
        rhs = [hs[i][1] for i in combo]
        if matrix_rank(matrix) < n:
            continue
        sol = solve_linear_system(matrix, rhs)
        if sol is None:
            continue
        pt = tuple(sol)
        if all(_dot(normal, pt) <= b for normal, b in hs):
            found.add(pt)
        if len(found) > MAX_VERTICES:
            raise EnumerationOverflow("more than %d vertices" % MAX_VERTICES)
    assert found, "validated h-polytopes are nonempty"
    return sorted(found)
