"""Exact linear programming over the rationals.

A dense two-phase simplex with Bland's pivoting rule.  Every coefficient is a
Fraction, so feasibility and optimality are decided exactly; no tolerances
exist anywhere.  Problem sizes in this package are tiny (a handful of
variables and constraints), so the dense tableau is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


def simplex_maximize(
    objective: Sequence[Fraction],
    lhs_le: Sequence[Sequence[Fraction]] = (),
    rhs_le: Sequence[Fraction] = (),
    lhs_eq: Sequence[Sequence[Fraction]] = (),
    rhs_eq: Sequence[Fraction] = (),
) -> tuple[Fraction, list[Fraction]]:
    """Maximize objective . x subject to lhs_le . x <= rhs_le,
    lhs_eq . x == rhs_eq, and x >= 0.

    Returns (optimal value, optimal x).  Raises Infeasible or Unbounded.
    """
    n = len(objective)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    kinds: list[str] = []
    for coeffs, b in zip(lhs_le, rhs_le):
        row, b = [Fraction(v) for v in coeffs], Fraction(b)
        if b < 0:
            row, b, kind = [-v for v in row], -b, "ge"
        else:
            kind = "le"
        rows.append(row)
        rhs.append(b)
        kinds.append(kind)
    for coeffs, b in zip(lhs_eq, rhs_eq):
        row, b = [Fraction(v) for v in coeffs], Fraction(b)
        if b < 0:
            row, b = [-v for v in row], -b
        rows.append(row)
        rhs.append(b)
        kinds.append("eq")

    m = len(rows)
    n_slack = sum(1 for k in kinds if k in ("le", "ge"))
    n_art = sum(1 for k in kinds if k in ("ge", "eq"))
    width = n + n_slack + n_art

    tableau = [row + [ZERO] * (n_slack + n_art) + [b] for row, b in zip(rows, rhs)]
    basis = [0] * m
    slack_pos = n
    art_pos = n + n_slack
    art_cols = []
    for r, kind in enumerate(kinds):
        if kind == "le":
            tableau[r][slack_pos] = ONE
            basis[r] = slack_pos
            slack_pos += 1
        elif kind == "ge":
            tableau[r][slack_pos] = -ONE
            slack_pos += 1
            tableau[r][art_pos] = ONE
            basis[r] = art_pos
            art_cols.append(art_pos)
            art_pos += 1
        else:
            tableau[r][art_pos] = ONE
            basis[r] = art_pos
            art_cols.append(art_pos)
            art_pos += 1

    def pivot(r: int, c: int):
        prow = tableau[r]
        piv = prow[c]
        if piv != ONE:
            inv = ONE / piv
            tableau[r] = prow = [v * inv for v in prow]
        for rr in range(m):
            if rr == r:
                continue
            row = tableau[rr]
            factor = row[c]
            if factor:
                tableau[rr] = [a - factor * b for a, b in zip(row, prow)]
        basis[r] = c

    def optimize(cost: list[Fraction], allowed: int) -> Fraction:
        """Pivot with Bland's rule to maximize cost . x over columns < allowed."""
        while True:
            # reduced costs recomputed per pass; tableau sizes make this cheap
            reduced = cost[:allowed]
            for r in range(m):
                cb = cost[basis[r]]
                if cb:
                    row = tableau[r]
                    reduced = [z - cb * row[j] for j, z in enumerate(reduced)]
            enter = -1
            for j in range(allowed):
                if reduced[j] > 0:
                    enter = j
                    break
            if enter < 0:
                value = ZERO
                for r in range(m):
                    cb = cost[basis[r]]
                    if cb:
                        value += cb * tableau[r][-1]
                return value
            leave = -1
            best = None
            for r in range(m):
                a = tableau[r][enter]
                if a > 0:
                    ratio = tableau[r][-1] / a
                    if best is None or ratio < best or (
                        ratio == best and basis[r] < basis[leave]
                    ):
                        best = ratio
                        leave = r
            if leave < 0:
                raise Unbounded("objective unbounded above")
            pivot(leave, enter)

    if art_cols:
        cost1 = [ZERO] * width
        for c in art_cols:
            cost1[c] = -ONE
        value = optimize(cost1, width)
        if value != 0:
            raise Infeasible("phase 1 ended with positive artificial mass")
        # drive any degenerate artificial out of the basis
        art_set = set(art_cols)
        for r in range(m):
            if basis[r] in art_set:
                for j in range(n + n_slack):
                    if tableau[r][j] != 0:
                        pivot(r, j)
                        break
        # rows still basic in an artificial are identically zero; freeze them
        for r in range(m):
            if basis[r] in art_set:
                tableau[r] = [ZERO] * width + [ZERO]

    cost2 = [ZERO] * width
    for j in range(n):
        cost2[j] = Fraction(objective[j])
    value = optimize(cost2, n + n_slack)

    x = [ZERO] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tableau[r][-1]
    return value, x
