"""Exact rational linear programming: two-phase simplex with Bland's rule.

Everything runs on fractions.Fraction; no floating point enters any pivot
decision, so facet and redundancy verdicts at rational vertices are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LEQ = "<="
GEQ = ">="
EQ = "="


@dataclass
class LinearProgram:
    """min/max of objective . x subject to rows with senses.

    Variables are free unless listed in `nonneg`.
    """

    num_vars: int
    objective: list[Fraction]
    maximize: bool = False
    rows: list[list[Fraction]] = field(default_factory=list)
    senses: list[str] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)
    nonneg: set[int] = field(default_factory=set)

    def add_constraint(self, coeffs: Sequence, sense: str, rhs) -> None:
        if len(coeffs) != self.num_vars:
            raise ValueError("constraint width does not match variable count")
        if sense not in (LEQ, GEQ, EQ):
            raise ValueError(f"bad sense {sense!r}")
        self.rows.append([Fraction(c) for c in coeffs])
        self.senses.append(sense)
        self.rhs.append(Fraction(rhs))


@dataclass
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[list[Fraction]] = None


class _Tableau:
    """Dense simplex tableau over Fraction, Bland anti-cycling rule."""

    def __init__(self, A: list[list[Fraction]], b: list[Fraction],
                 c: list[Fraction]):
        self.m = len(A)
        self.n = len(A[0]) if A else 0
        self.A = A
        self.b = b
        self.c = c  # reduced costs for minimization
        self.z = Fraction(0)
        self.basis: list[int] = []

    def pivot(self, r: int, col: int) -> None:
        A, b = self.A, self.b
        piv = A[r][col]
        inv = 1 / piv
        A[r] = [v * inv for v in A[r]]
        b[r] *= inv
        for i in range(self.m):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * p for a, p in zip(A[i], A[r])]
                b[i] -= f * b[r]
        f = self.c[col]
        if f != 0:
            self.c = [a - f * p for a, p in zip(self.c, A[r])]
            self.z -= f * b[r]
        self.basis[r] = col

    def solve(self) -> str:
        while True:
            col = next((j for j in range(self.n) if self.c[j] < 0), None)
            if col is None:
                return OPTIMAL
            ratios = [(self.b[i] / self.A[i][col], self.basis[i], i)
                      for i in range(self.m) if self.A[i][col] > 0]
            if not ratios:
                return UNBOUNDED
            _, _, r = min(ratios)
            self.pivot(r, col)


def lp_solve(lp: LinearProgram) -> LPResult:
    """Two-phase exact simplex."""
    for row in lp.rows:
        if len(row) != lp.num_vars:
            raise ValueError("malformed LP dimensions")

    # column layout: for each original var either one nonneg column or a
    # split pair (plus, minus); then one slack per inequality row.
    col_of: list[tuple[int, Optional[int]]] = []
    ncols = 0
    for j in range(lp.num_vars):
        if j in lp.nonneg:
            col_of.append((ncols, None))
            ncols += 1
        else:
            col_of.append((ncols, ncols + 1))
            ncols += 2
    slack_cols: list[Optional[int]] = []
    for sense in lp.senses:
        if sense == EQ:
            slack_cols.append(None)
        else:
            slack_cols.append(ncols)
            ncols += 1

    m = len(lp.rows)
    A = [[Fraction(0)] * ncols for _ in range(m)]
    b = [Fraction(0)] * m
    for i, (row, sense, rhs) in enumerate(zip(lp.rows, lp.senses, lp.rhs)):
        for j, v in enumerate(row):
            if v == 0:
                continue
            pos, neg = col_of[j]
            A[i][pos] = v
            if neg is not None:
                A[i][neg] = -v
        if slack_cols[i] is not None:
            A[i][slack_cols[i]] = Fraction(1 if sense == LEQ else -1)
        b[i] = rhs
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]

    # phase 1: artificial variables, minimize their sum
    art_cols = list(range(ncols, ncols + m))
    total = ncols + m
    for i in range(m):
        A[i] = A[i] + [Fraction(0)] * m
        A[i][art_cols[i]] = Fraction(1)
    c1 = [Fraction(0)] * ncols + [Fraction(1)] * m
    tab = _Tableau([row[:] for row in A], b[:], c1[:])
    tab.n = total
    tab.basis = art_cols[:]
    # price out the artificial basis
    for i in range(m):
        f = tab.c[art_cols[i]]
        if f != 0:
            tab.c = [a - f * p for a, p in zip(tab.c, tab.A[i])]
            tab.z -= f * tab.b[i]
    tab.solve()
    art_sum = sum((tab.b[i] for i in range(tab.m) if tab.basis[i] >= ncols),
                  Fraction(0))
    if art_sum != 0:
        return LPResult(INFEASIBLE)
    # drive remaining artificials out of the basis where possible
    for i in range(tab.m):
        if tab.basis[i] >= ncols:
            col = next((j for j in range(ncols) if tab.A[i][j] != 0), None)
            if col is not None:
                tab.pivot(i, col)

    keep_rows = [i for i in range(tab.m)
                 if tab.basis[i] < ncols or tab.b[i] == 0]
    rows2 = []
    b2 = []
    basis2 = []
    for i in range(tab.m):
        if tab.basis[i] >= ncols:
            # redundant zero row with a stuck artificial; drop it
            continue
        rows2.append(tab.A[i][:ncols])
        b2.append(tab.b[i])
        basis2.append(tab.basis[i])
    del keep_rows

    # phase 2
    sign = -1 if lp.maximize else 1
    c2 = [Fraction(0)] * ncols
    for j in range(lp.num_vars):
        v = Fraction(lp.objective[j]) * sign
        if v == 0:
            continue
        pos, neg = col_of[j]
        c2[pos] += v
        if neg is not None:
            c2[neg] -= v
    tab2 = _Tableau(rows2, b2, c2)
    tab2.basis = basis2
    tab2.z = Fraction(0)
    for i in range(tab2.m):
        f = tab2.c[tab2.basis[i]]
        if f != 0:
            tab2.c = [a - f * p for a, p in zip(tab2.c, tab2.A[i])]
            tab2.z -= f * tab2.b[i]
    status = tab2.solve()
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)

    xcols = [Fraction(0)] * ncols
    for i, bi in enumerate(tab2.basis):
        xcols[bi] = tab2.b[i]
    x = []
    for j in range(lp.num_vars):
        pos, neg = col_of[j]
        x.append(xcols[pos] - (xcols[neg] if neg is not None else 0))
    value = sum(Fraction(lp.objective[j]) * x[j] for j in range(lp.num_vars))
    return LPResult(OPTIMAL, value, x)
