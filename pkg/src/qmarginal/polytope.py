"""Redundancy elimination, canonicalization and membership verdicts.

All decisions run through the exact rational simplex, with the chamber and
normalization constraints as the ambient domain: independence claims are
relative to the chamber, not to all of space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .engine import InequalitySystem, MarginalInequality
from .lp import EQ, GEQ, LEQ, LinearProgram, LPResult, lp_solve, OPTIMAL
from .spectra import Spectrum, SystemFormat, TRACE_ONE


def variable_layout(format: SystemFormat) -> tuple[int, list[tuple[int, int]]]:
    """Total variable count and (offset, size) per spectrum.

    Order: composite spectrum first, then one block per subsystem.
    """
    blocks = [(0, format.composite_dim)]
    pos = format.composite_dim
    for d in format.dims:
        blocks.append((pos, d))
        pos += d
    return pos, blocks


def domain_constraints(format: SystemFormat) -> LinearProgram:
    """Chamber order, nonnegativity and unit trace for every spectrum."""
    nvars, blocks = variable_layout(format)
    lp = LinearProgram(nvars, [Fraction(0)] * nvars)
    for off, size in blocks:
        for i in range(size - 1):
            row = [Fraction(0)] * nvars
            row[off + i] = Fraction(1)
            row[off + i + 1] = Fraction(-1)
            lp.add_constraint(row, GEQ, 0)
        row = [Fraction(0)] * nvars
        row[off + size - 1] = Fraction(1)
        lp.add_constraint(row, GEQ, 0)
        row = [Fraction(0)] * nvars
        for i in range(size):
            row[off + i] = Fraction(1)
        lp.add_constraint(row, EQ, 1)
    return lp


def inequality_row(format: SystemFormat, ineq: MarginalInequality) -> list[Fraction]:
    """Coefficient row of the expression sum r nu - sum p lambda."""
    nvars, blocks = variable_layout(format)
    row = [Fraction(0)] * nvars
    off, size = blocks[0]
    for k in range(size):
        row[off + k] = Fraction(ineq.composite_coeffs[k])
    for c, (offc, d) in enumerate(blocks[1:]):
        for i in range(d):
            row[offc + i] = Fraction(-ineq.component_coeffs[c][i])
    return row


def _base_lp(format: SystemFormat, rows: Sequence[Sequence[Fraction]],
             objective: Sequence[Fraction], maximize: bool = False,
             extra_eq: Sequence[tuple[Sequence[Fraction], Fraction]] = ()) -> LinearProgram:
    lp = domain_constraints(format)
    lp.objective = [Fraction(v) for v in objective]
    lp.maximize = maximize
    for row in rows:
        lp.add_constraint(row, GEQ, 0)
    for row, rhs in extra_eq:
        lp.add_constraint(row, EQ, rhs)
    return lp


def _homogeneous_domain(format: SystemFormat) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """Chamber cone rows (>= 0) and trace-consistency equality rows (= 0)."""
    nvars, blocks = variable_layout(format)
    geq_rows: list[list[Fraction]] = []
    for off, size in blocks:
        for i in range(size - 1):
            row = [Fraction(0)] * nvars
            row[off + i] = Fraction(1)
            row[off + i + 1] = Fraction(-1)
            geq_rows.append(row)
        row = [Fraction(0)] * nvars
        row[off + size - 1] = Fraction(1)
        geq_rows.append(row)
    eq_rows: list[list[Fraction]] = []
    off0, size0 = blocks[0]
    for off, size in blocks[1:]:
        row = [Fraction(0)] * nvars
        for k in range(size0):
            row[off0 + k] = Fraction(1)
        for i in range(size):
            row[off + i] -= Fraction(1)
        eq_rows.append(row)
    return geq_rows, eq_rows


def _float_support(target: Sequence[Fraction], cols: Sequence[Sequence[Fraction]]) -> Optional[list[int]]:
    """Columns with nonzero multiplier in a floating point cone solve.

    Only a hint: the caller must reconfirm exactly on the returned support.
    """
    try:
        import numpy as np
        from scipy.optimize import linprog
    except ImportError:
        return None
    A = np.array([[float(v) for v in col] for col in cols], dtype=float).T
    b = np.array([float(v) for v in target], dtype=float)
    res = linprog(np.zeros(len(cols)), A_eq=A, b_eq=b,
                  bounds=(0, None), method="highs")
    if not res.success:
        return None
    return [j for j, v in enumerate(res.x) if v > 1e-9]


def _float_ray(target: Sequence[Fraction], cols: Sequence[Sequence[Fraction]]) -> Optional[list[Fraction]]:
    """Separating ray guessed in floats, returned only if it verifies exactly."""
    try:
        import numpy as np
        from scipy.optimize import linprog
    except ImportError:
        return None
    A_ub = -np.array([[float(v) for v in col] for col in cols], dtype=float)
    c = np.array([float(v) for v in target], dtype=float)
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(len(cols)),
                  bounds=(-1, 1), method="highs")
    if not res.success or res.fun > -1e-9:
        return None
    ray = [Fraction(float(v)).limit_denominator(10 ** 9) for v in res.x]
    if sum(t * z for t, z in zip(target, ray)) >= 0:
        return None
    if any(sum(a * z for a, z in zip(col, ray)) < 0 for col in cols):
        return None
    return ray


def _exact_cone_solve(target: Sequence[Fraction], cols: Sequence[Sequence[Fraction]]) -> bool:
    """Exact phase-one test that target is a nonnegative combination."""
    from .lp import _Tableau

    n = len(target)
    ncols = len(cols)
    A = [[Fraction(0)] * (ncols + n) for _ in range(n)]
    b = [Fraction(0)] * n
    for i in range(n):
        ti = Fraction(target[i])
        s = -1 if ti < 0 else 1
        b[i] = ti * s
        for j in range(ncols):
            A[i][j] = cols[j][i] * s
        A[i][ncols + i] = Fraction(1)
    c = [Fraction(0)] * ncols + [Fraction(1)] * n
    tab = _Tableau(A, b, c)
    tab.basis = list(range(ncols, ncols + n))
    for i in range(n):
        f = tab.c[tab.basis[i]]
        if f != 0:
            tab.c = [a - f * p for a, p in zip(tab.c, tab.A[i])]
    tab.solve()
    art_sum = sum((tab.b[i] for i in range(n) if tab.basis[i] >= ncols),
                  Fraction(0))
    return art_sum == 0


def _implied_in_cone(target: Sequence[Fraction], rows: Sequence[Sequence[Fraction]],
                     eq_rows: Sequence[Sequence[Fraction]]) -> tuple[bool, Optional[list[Fraction]]]:
    """Farkas test: is target a nonnegative combination of rows plus a
    linear combination of eq_rows?

    If not, returns the separating ray z with rows.z >= 0, eq_rows.z = 0 and
    target.z < 0.  Phase-one simplex on the transposed system, so the
    tableau has only as many rows as there are variables.  A floating point
    solve proposes a small support first; the verdict itself always comes
    from an exact solve.
    """
    from .lp import _Tableau

    n = len(target)
    cols: list[list[Fraction]] = [list(r) for r in rows]
    for e in eq_rows:
        cols.append(list(e))
        cols.append([-v for v in e])
    ncols = len(cols)

    if ncols > 3 * n:
        support = _float_support(target, cols)
        if support is not None and _exact_cone_solve(
                target, [cols[j] for j in support]):
            return True, None
        ray = _float_ray(target, cols)
        if ray is not None:
            return False, ray
    A = [[Fraction(0)] * (ncols + n) for _ in range(n)]
    b = [Fraction(0)] * n
    flipped = [False] * n
    for i in range(n):
        ti = Fraction(target[i])
        s = -1 if ti < 0 else 1
        flipped[i] = s < 0
        b[i] = ti * s
        for j in range(ncols):
            A[i][j] = cols[j][i] * s
        A[i][ncols + i] = Fraction(1)
    c = [Fraction(0)] * ncols + [Fraction(1)] * n
    tab = _Tableau(A, b, c)
    tab.basis = list(range(ncols, ncols + n))
    for i in range(n):
        f = tab.c[tab.basis[i]]
        if f != 0:
            tab.c = [a - f * p for a, p in zip(tab.c, tab.A[i])]
    tab.solve()
    art_sum = sum((tab.b[i] for i in range(n) if tab.basis[i] >= ncols),
                  Fraction(0))
    if art_sum == 0:
        return True, None
    # Farkas ray from the simplex multipliers of the artificial columns
    ray = []
    for i in range(n):
        pi = 1 - tab.c[ncols + i]
        if flipped[i]:
            pi = -pi
        ray.append(-pi)
    tz = sum(t * z for t, z in zip(target, ray))
    if tz >= 0 or any(sum(a * z for a, z in zip(r, ray)) < 0 for r in rows) \
            or any(sum(a * z for a, z in zip(e, ray)) != 0 for e in eq_rows):
        raise RuntimeError("invalid Farkas certificate")
    return False, ray


def _uniform_point(format: SystemFormat) -> list[Fraction]:
    nvars, blocks = variable_layout(format)
    pt = [Fraction(0)] * nvars
    for off, size in blocks:
        for i in range(size):
            pt[off + i] = Fraction(1, size)
    return pt


def _witness_from_ray(format: SystemFormat, ray: Sequence[Fraction]) -> list[Fraction]:
    """Turn a separating cone ray into a trace-one witness point."""
    nvars, blocks = variable_layout(format)
    off0, size0 = blocks[0]
    s = sum((ray[off0 + k] for k in range(size0)), Fraction(0))
    base = _uniform_point(format)
    return [(u + z) / (1 + s) for u, z in zip(base, ray)]


def is_redundant(ineq: MarginalInequality, others: Sequence[MarginalInequality],
                 format: Optional[SystemFormat] = None,
                 extra_eq: Sequence[tuple[Sequence[Fraction], Fraction]] = ()) -> tuple[bool, Optional[list[Fraction]]]:
    """Minimize the expression subject to the rest; redundant iff min >= 0.

    Returns (verdict, witness): for a non-redundant inequality the witness
    point satisfies all the others but violates this one.
    """
    if format is None:
        format = ineq.format
    target = inequality_row(format, ineq)
    rows = [inequality_row(format, o) for o in others]
    if not extra_eq:
        # the whole question is homogeneous: Farkas over the chamber cone
        dom_rows, dom_eqs = _homogeneous_domain(format)
        ok, ray = _implied_in_cone(target, rows + dom_rows, dom_eqs)
        if ok:
            return True, None
        return False, _witness_from_ray(format, ray)
    lp = _base_lp(format, rows, target, maximize=False, extra_eq=extra_eq)
    res = lp_solve(lp)
    if res.status != OPTIMAL:
        raise RuntimeError(f"domain LP unexpectedly {res.status}")
    if res.value >= 0:
        return True, None
    return False, res.x


def _point_value(row: Sequence[Fraction], point: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(row, point)), Fraction(0))


@dataclass
class ReductionReport:
    kept: list[MarginalInequality]
    removed: list[MarginalInequality]
    witnesses: dict[MarginalInequality, list[Fraction]] = field(default_factory=dict)
    orbits: list[list[MarginalInequality]] = field(default_factory=list)


def subsystem_symmetries(format: SystemFormat) -> list[tuple[int, ...]]:
    """Permutations of subsystems preserving the dimension vector."""
    out = []
    for perm in itertools.permutations(range(format.rank)):
        if all(format.dims[perm[c]] == format.dims[c]
               for c in range(format.rank)):
            out.append(perm)
    return out


def orbit_of(ineq: MarginalInequality, symmetries: Sequence[tuple[int, ...]],
             use_duality: bool) -> set[MarginalInequality]:
    orbit = set()
    for perm in symmetries:
        img = ineq.permute_subsystems(perm).canonical()
        orbit.add(img)
        if use_duality:
            orbit.add(img.dual().canonical())
    return orbit


def reduce_system(system: InequalitySystem, use_symmetry: bool = True,
                  use_duality: bool = False) -> tuple[InequalitySystem, ReductionReport]:
    """Greedy elimination to an irredundant subsystem.

    Candidates are processed in descending canonical order; each removal is
    committed only after an exact LP certifies the inequality is implied by
    the remaining ones together with the domain.  Witness points from failed
    eliminations are cached to skip repeat LPs.
    """
    fmt = system.format
    active = sorted({iq.canonical() for iq in system.inequalities},
                    key=MarginalInequality.sort_key)
    rows = {iq: inequality_row(fmt, iq) for iq in active}
    witnesses: dict[MarginalInequality, list[Fraction]] = {}
    points: list[list[Fraction]] = []
    removed: list[MarginalInequality] = []

    # pass 1: build a small implying core, testing each candidate only
    # against the core so far.  Anything the core implies stays implied when
    # pass 2 trims the core, since removals there are themselves implied.
    # Drops need an exact certificate; keeps may rely on the float solve
    # alone, since pass 2 rechecks every core member exactly.
    dom_rows, dom_eqs = _homogeneous_domain(fmt)
    fixed_cols = [list(r) for r in dom_rows]
    for e in dom_eqs:
        fixed_cols.append(list(e))
        fixed_cols.append([-v for v in e])
    core: list[MarginalInequality] = []
    core_cols: list[list[Fraction]] = []
    for iq in active:
        cached = next((pt for pt in points
                       if _point_value(rows[iq], pt) < 0 and all(
                           _point_value(rows[o], pt) >= 0 for o in core)),
                      None)
        if cached is not None:
            core.append(iq)
            core_cols.append(rows[iq])
            continue
        cols = core_cols + fixed_cols
        dropped = False
        support = _float_support(rows[iq], cols)
        if support is not None:
            if _exact_cone_solve(rows[iq], [cols[j] for j in support]):
                dropped = True
            else:
                redundant, witness = is_redundant(iq, core, fmt)
                if redundant:
                    dropped = True
                elif witness is not None:
                    points.append(witness)
        if dropped:
            removed.append(iq)
        else:
            core.append(iq)
            core_cols.append(rows[iq])

    # pass 2: greedy elimination inside the core, largest key first
    kept: list[MarginalInequality] = []
    current = set(core)
    for iq in sorted(core, key=MarginalInequality.sort_key, reverse=True):
        others = [o for o in current if o != iq]
        cached = next((pt for pt in points
                       if _point_value(rows[iq], pt) < 0 and all(
                           _point_value(rows[o], pt) >= 0 for o in others)),
                      None)
        if cached is not None:
            kept.append(iq)
            witnesses[iq] = cached
            continue
        redundant, witness = is_redundant(iq, others, fmt)
        if redundant:
            current.discard(iq)
            removed.append(iq)
        else:
            kept.append(iq)
            witnesses[iq] = witness
            points.append(witness)
    kept.sort(key=MarginalInequality.sort_key)
    removed.sort(key=MarginalInequality.sort_key)
    out = InequalitySystem(fmt, system.normalization)
    for iq in kept:
        out.add(iq, system.provenance.get(iq))
    report = ReductionReport(kept, removed, witnesses)
    if use_symmetry or use_duality:
        syms = subsystem_symmetries(fmt) if use_symmetry else [tuple(range(fmt.rank))]
        seen: set[MarginalInequality] = set()
        for iq in kept:
            if iq in seen:
                continue
            orb = orbit_of(iq, syms, use_duality) & set(kept)
            seen |= orb
            report.orbits.append(sorted(orb, key=MarginalInequality.sort_key))
    return out, report


@dataclass
class Verdict:
    compatible: bool
    violated: list[int]
    margins_checked: str = TRACE_ONE


def check_membership(system: InequalitySystem, component_spectra: Sequence[Spectrum],
                     composite_spectrum: Spectrum) -> Verdict:
    """Evaluate every inequality exactly at the given trace-one spectra."""
    fmt = system.format
    if len(component_spectra) != fmt.rank or any(
            len(s) != d for s, d in zip(component_spectra, fmt.dims)):
        raise ValueError("component spectra do not match the format")
    if len(composite_spectrum) != fmt.composite_dim:
        raise ValueError("composite spectrum does not match the format")
    for s in list(component_spectra) + [composite_spectrum]:
        if s.total != 1:
            raise ValueError("membership checks expect trace-one spectra")
    violated = [i for i, iq in enumerate(system.inequalities)
                if iq.evaluate(component_spectra, composite_spectrum) < 0]
    return Verdict(not violated, violated)


def system_implies(system: Sequence[MarginalInequality], target: MarginalInequality,
                   format: SystemFormat,
                   extra_eq: Sequence[tuple[Sequence[Fraction], Fraction]] = ()) -> bool:
    redundant, _ = is_redundant(target, list(system), format, extra_eq)
    return redundant


def systems_equivalent(a: Sequence[MarginalInequality], b: Sequence[MarginalInequality],
                       format: SystemFormat,
                       extra_eq: Sequence[tuple[Sequence[Fraction], Fraction]] = ()) -> bool:
    """Mutual implication over the domain (plus optional equality slice)."""
    return (all(system_implies(a, iq, format, extra_eq) for iq in b)
            and all(system_implies(b, iq, format, extra_eq) for iq in a))
