"""Exact rational linear algebra and a small dense simplex solver.

All computations are over ``fractions.Fraction``; there is no floating point
and therefore no tolerance anywhere.  The solver is a plain two-phase
tableau simplex with Bland's rule, which is entirely adequate for the
desk-scale problems this package generates (tens of variables and
constraints).  Free variables are handled by the classic u - v split.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = [
    "LPResult",
    "lp_maximize",
    "solve_linear_system",
    "matrix_rank",
    "affinely_independent",
]

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Gaussian elimination
# ---------------------------------------------------------------------------

def solve_linear_system(matrix: Sequence[Sequence[Fraction]],
                        rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """One exact solution of A x = b, or None if the system is inconsistent.

    Underdetermined systems get free variables pinned to zero (first-pivot
    choice keeps the result deterministic).
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        pv = a[row][col]
        a[row] = [v / pv for v in a[row]]
        for r in range(m):
            if r != row and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if a[r][n] != 0:
            return None
    solution = [ZERO] * n
    for r, c in pivots:
        solution[c] = a[r][n]
    return solution


def matrix_rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    m = len(matrix)
    if m == 0:
        return 0
    n = len(matrix[0])
    a = [list(row) for row in matrix]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        pv = a[rank][col]
        for r in range(rank + 1, m):
            if a[r][col] != 0:
                factor = a[r][col] / pv
                a[r] = [v - factor * w for v, w in zip(a[r], a[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def affinely_independent(points: Sequence[Sequence[Fraction]]) -> bool:
    if len(points) <= 1:
        return True
    base = points[0]
    diffs = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    return matrix_rank(diffs) == len(points) - 1


# ---------------------------------------------------------------------------
# Simplex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LPResult:
    status: str                       # "optimal" | "unbounded" | "infeasible"
    value: Optional[Fraction]
    point: Optional[tuple[Fraction, ...]]
    ray: Optional[tuple[Fraction, ...]] = None   # recession direction when unbounded

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def lp_maximize(objective: Sequence[Fraction],
                a_ub: Sequence[Sequence[Fraction]] = (),
                b_ub: Sequence[Fraction] = (),
                a_eq: Sequence[Sequence[Fraction]] = (),
                b_eq: Sequence[Fraction] = (),
                nonneg: Optional[Sequence[bool]] = None) -> LPResult:
    """Maximize c.x subject to A_ub x <= b_ub and A_eq x = b_eq.

    Variables are free unless flagged in ``nonneg``.  Exact; deterministic
    (Bland's rule with fixed tie-breaks).
    """
    n = len(objective)
    if nonneg is None:
        nonneg = [False] * n
    # Map original variables onto nonnegative columns: x_j = u_j (- v_j).
    col_of: list[tuple[int, Optional[int]]] = []
    ncols = 0
    for j in range(n):
        if nonneg[j]:
            col_of.append((ncols, None))
            ncols += 1
        else:
            col_of.append((ncols, ncols + 1))
            ncols += 2

    def expand(row: Sequence[Fraction]) -> list[Fraction]:
        out = [ZERO] * ncols
        for j, coeff in enumerate(row):
            if coeff == 0:
                continue
            pos, neg = col_of[j]
            out[pos] += coeff
            if neg is not None:
                out[neg] -= coeff
        return out

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    kinds: list[str] = []
    for row, b in zip(a_ub, b_ub):
        rows.append(expand(row))
        rhs.append(Fraction(b))
        kinds.append("ub")
    for row, b in zip(a_eq, b_eq):
        rows.append(expand(row))
        rhs.append(Fraction(b))
        kinds.append("eq")

    m = len(rows)
    nslack = sum(1 for k in kinds if k == "ub")
    # Column layout: structural | slacks | artificials.
    slack_index: dict[int, int] = {}
    s = 0
    for i, kind in enumerate(kinds):
        if kind == "ub":
            slack_index[i] = ncols + s
            s += 1
    total = ncols + nslack
    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    artificials: list[int] = []
    for i in range(m):
        row = rows[i] + [ZERO] * nslack
        b = rhs[i]
        if kinds[i] == "ub":
            row[slack_index[i]] = ONE
        if b < 0:
            row = [-v for v in row]
            b = -b
            flipped = True
        else:
            flipped = False
        if kinds[i] == "ub" and not flipped:
            basis.append(slack_index[i])
        else:
            basis.append(-1)  # placeholder for an artificial
        tableau.append(row + [b])

    for i in range(m):
        if basis[i] == -1:
            for r in range(m):
                tableau[r].insert(-1, ONE if r == i else ZERO)
            basis[i] = total
            artificials.append(total)
            total += 1

    width = total + 1

    def pivot(row_i: int, col_j: int) -> None:
        pv = tableau[row_i][col_j]
        tableau[row_i] = [v / pv for v in tableau[row_i]]
        for r in range(m):
            if r != row_i and tableau[r][col_j] != 0:
                factor = tableau[r][col_j]
                prow = tableau[row_i]
                tableau[r] = [v - factor * w for v, w in zip(tableau[r], prow)]
        basis[row_i] = col_j

    def reduced_costs(cost: list[Fraction]) -> list[Fraction]:
        # cost has one entry per column (no rhs); returns cost - c_B B^-1 A.
        red = list(cost)
        for i, bj in enumerate(basis):
            cb = cost[bj]
            if cb != 0:
                row = tableau[i]
                for j in range(total):
                    if row[j] != 0:
                        red[j] -= cb * row[j]
        return red

    def run_phase(cost: list[Fraction]) -> str:
        while True:
            red = reduced_costs(cost)
            enter = next((j for j in range(total) if red[j] > 0), None)
            if enter is None:
                return "optimal"
            ratio_best: Optional[Fraction] = None
            leave = None
            for i in range(m):
                coeff = tableau[i][enter]
                if coeff > 0:
                    ratio = tableau[i][width - 1] / coeff
                    if ratio_best is None or ratio < ratio_best or (
                            ratio == ratio_best and basis[i] < basis[leave]):
                        ratio_best = ratio
                        leave = i
            if leave is None:
                # Record the improving direction for unbounded certificates.
                nonlocal unbounded_col
                unbounded_col = enter
                return "unbounded"
            pivot(leave, enter)

    unbounded_col: Optional[int] = None

    if artificials:
        phase1 = [ZERO] * total
        for j in artificials:
            phase1[j] = -ONE
        status = run_phase(phase1)
        assert status == "optimal"  # phase 1 is always bounded
        infeas = sum(tableau[i][width - 1] for i in range(m) if basis[i] in artificials)
        if infeas != 0:
            return LPResult("infeasible", None, None)
        # Drive leftover artificials out of the basis where possible.
        for i in range(m):
            if basis[i] in artificials:
                swap = next((j for j in range(ncols + nslack) if tableau[i][j] != 0), None)
                if swap is not None:
                    pivot(i, swap)
        art_set = set(artificials)
        keep_rows = [i for i in range(m) if basis[i] not in art_set]
        drop_rows = [i for i in range(m) if basis[i] in art_set]
        for i in drop_rows:
            assert tableau[i][width - 1] == 0
        if drop_rows:
            tableau[:] = [tableau[i] for i in keep_rows]
            basis[:] = [basis[i] for i in keep_rows]
            m = len(tableau)
        for r in range(m):
            for j in sorted(art_set, reverse=True):
                del tableau[r][j]
        total -= len(artificials)
        width = total + 1

    phase2 = [ZERO] * total
    for j in range(n):
        pos, neg = col_of[j]
        phase2[pos] += objective[j]
        if neg is not None:
            phase2[neg] -= objective[j]
    status = run_phase(phase2)

    def extract_point() -> tuple[Fraction, ...]:
        values = [ZERO] * total
        for i, bj in enumerate(basis):
            values[bj] = tableau[i][width - 1]
        out = []
        for j in range(n):
            pos, neg = col_of[j]
            out.append(values[pos] - (values[neg] if neg is not None else ZERO))
        return tuple(out)

    if status == "unbounded":
        # Direction: entering column j increases; basic vars move by -column.
        direction = [ZERO] * total
        direction[unbounded_col] = ONE
        for i, bj in enumerate(basis):
            direction[bj] = -tableau[i][unbounded_col]
        ray = []
        for j in range(n):
            pos, neg = col_of[j]
            ray.append(direction[pos] - (direction[neg] if neg is not None else ZERO))
        return LPResult("unbounded", None, extract_point(), tuple(ray))

    point = extract_point()
    value = sum((objective[j] * point[j] for j in range(n)), ZERO)
    return LPResult("optimal", value, point)
