"""Walls, cubicles and extremal edges of the chamber subdivision.

The product of Weyl chambers (one weakly decreasing zero-sum spectrum per
subsystem) is cut by the hyperplanes where two composed sums coincide.  Top
cells are cubicles, encoded by the ranking of composed sums; rays on D-1
independent walls are the extremal edges that anchor marginal inequalities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .linalg import nullspace, primitive_integer, rank
from .lp import GEQ, LEQ, EQ, LinearProgram, lp_solve
from .spectra import Spectrum, SystemFormat, TRACE_ZERO, composed_value


@dataclass(frozen=True)
class Wall:
    """Primitive integer normal, one zero-sum block per component."""

    components: tuple[tuple[int, ...], ...]

    def concat(self) -> tuple[int, ...]:
        return tuple(v for block in self.components for v in block)


@dataclass(frozen=True)
class Edge:
    """One primitive trace-zero integer spectrum per subsystem."""

    components: tuple[tuple[int, ...], ...]

    def spectra(self) -> list[Spectrum]:
        return [Spectrum(block, TRACE_ZERO) for block in self.components]

    def composed(self) -> Spectrum:
        sums = [Fraction(0)]
        for block in self.components:
            sums = [s + v for s in sums for v in block]
        sums.sort(reverse=True)
        return Spectrum(sums, TRACE_ZERO)

    def serialize(self) -> str:
        return ";".join(",".join(str(v) for v in block)
                        for block in self.components)

    @staticmethod
    def parse(text: str) -> "Edge":
        return Edge(tuple(tuple(int(v) for v in block.split(","))
                          for block in text.split(";")))


@dataclass(frozen=True)
class CubicleRanking:
    """Index tuples listed by rank: position k-1 holds the k-th largest sum."""

    format: SystemFormat
    order: tuple[tuple[int, ...], ...]

    def rank_of(self) -> dict[tuple[int, ...], int]:
        return {t: k + 1 for k, t in enumerate(self.order)}

    def tableau(self) -> list[list[int]]:
        """Rank matrix for bipartite formats (rectangular standard tableau)."""
        if self.format.rank != 2:
            raise ValueError("tableau form needs a bipartite format")
        d1, d2 = self.format.dims
        ranks = self.rank_of()
        return [[ranks[(i + 1, j + 1)] for j in range(d2)] for i in range(d1)]

    def serialize(self) -> str:
        if self.format.rank == 2:
            return ";".join(",".join(str(v) for v in row)
                            for row in self.tableau())
        return ";".join(",".join(str(i) for i in t) for t in self.order)


def _split(format: SystemFormat, concat: Sequence) -> tuple[tuple, ...]:
    blocks = []
    pos = 0
    for d in format.dims:
        blocks.append(tuple(concat[pos:pos + d]))
        pos += d
    return tuple(blocks)


def walls(format: SystemFormat) -> list[Wall]:
    """All primitive normals separating two composed sums."""
    tuples = format.tuples()
    seen: set[tuple[int, ...]] = set()
    out: list[Wall] = []
    L = sum(format.dims)
    offsets = [sum(format.dims[:c]) for c in range(format.rank)]
    for t, s in itertools.combinations(tuples, 2):
        vec = [0] * L
        for c in range(format.rank):
            if t[c] != s[c]:
                vec[offsets[c] + t[c] - 1] += 1
                vec[offsets[c] + s[c] - 1] -= 1
        first = next((v for v in vec if v != 0), 0)
        if first < 0:
            vec = [-v for v in vec]
        key = tuple(vec)
        if key not in seen:
            seen.add(key)
            out.append(Wall(_split(format, vec)))
    out.sort(key=lambda w: w.concat())
    return out


def _sum_rows(format: SystemFormat) -> list[list[Fraction]]:
    L = sum(format.dims)
    rows = []
    pos = 0
    for d in format.dims:
        row = [Fraction(0)] * L
        for i in range(d):
            row[pos + i] = Fraction(1)
        rows.append(row)
        pos += d
    return rows


def _chamber_ray(format: SystemFormat, vec: Sequence[Fraction]) -> Optional[Edge]:
    """Orient and normalize a kernel vector into the chamber, if possible."""
    ints = primitive_integer(vec)
    for cand in (ints, [-v for v in ints]):
        blocks = _split(format, cand)
        if all(all(a >= b for a, b in zip(block, block[1:]))
               for block in blocks):
            return Edge(blocks)
    return None


def extremal_edges(format: SystemFormat,
                   wall_list: Optional[list[Wall]] = None) -> list[Edge]:
    """All rays of the subdivision lying on D-1 independent walls.

    Enumerates independent (D-1)-subsets of wall normals with rank pruning
    and keeps the kernel rays that fall inside the closed chamber product.
    """
    if wall_list is None:
        wall_list = walls(format)
    D = format.degrees_of_freedom
    L = sum(format.dims)
    sums = _sum_rows(format)
    normals = [[Fraction(v) for v in w.concat()] for w in wall_list]
    found: set[tuple[tuple[int, ...], ...]] = set()
    edges: list[Edge] = []

    if D == 1:
        # single qubit-like chamber: the ray itself
        vec = nullspace(sums, L)[0]
        edge = _chamber_ray(format, vec)
        if edge is not None:
            edges.append(edge)
        return edges

    def recurse(start: int, chosen: list[list[Fraction]], need: int):
        if need == 0:
            mat = sums + chosen
            kern = nullspace(mat, L)
            if len(kern) != 1:
                return
            edge = _chamber_ray(format, kern[0])
            if edge is not None and edge.components not in found:
                found.add(edge.components)
                edges.append(edge)
            return
        for idx in range(start, len(normals) - need + 1):
            cand = chosen + [normals[idx]]
            if rank(sums + cand) != format.rank + len(cand):
                continue  # dependent wall; an equivalent smaller subset exists
            recurse(idx + 1, cand, need - 1)

    recurse(0, [], D - 1)
    edges.sort(key=lambda e: e.components)
    return edges


def qubit_edges(n: int) -> list[Edge]:
    """Edge enumeration for n qubits via kernels of sign-vector walls.

    Each qubit contributes one degree of freedom x_c (spectrum (x_c, -x_c)),
    and walls are the sign vectors eta with eta . x = 0; rays on n-1
    independent walls with all x_c >= 0 are the extremal edges.
    """
    etas = []
    for eta in itertools.product((0, 1, -1), repeat=n):
        if any(eta):
            first = next(v for v in eta if v)
            if first > 0:
                etas.append([Fraction(v) for v in eta])
    found: set[tuple[tuple[int, ...], ...]] = set()
    edges: list[Edge] = []

    def recurse(start: int, chosen: list[list[Fraction]], need: int):
        if need == 0:
            kern = nullspace(chosen, n)
            if len(kern) != 1:
                return
            ints = primitive_integer(kern[0])
            for cand in (ints, [-v for v in ints]):
                if all(v >= 0 for v in cand):
                    comps = tuple((v, -v) for v in cand)
                    if comps not in found:
                        found.add(comps)
                        edges.append(Edge(comps))
                    break
            return
        for idx in range(start, len(etas) - need + 1):
            cand = chosen + [etas[idx]]
            if rank(cand) != len(cand):
                continue
            recurse(idx + 1, cand, need - 1)

    recurse(0, [], n - 1)
    edges.sort(key=lambda e: e.components)
    return edges


def edge_wall_rank(format: SystemFormat, edge: Edge,
                   wall_list: Optional[list[Wall]] = None) -> int:
    """Rank of the set of walls vanishing on the edge."""
    if wall_list is None:
        wall_list = walls(format)
    concat = [Fraction(v) for block in edge.components for v in block]
    vanish = []
    for w in wall_list:
        coeffs = w.concat()
        if sum(c * x for c, x in zip(coeffs, concat)) == 0:
            vanish.append([Fraction(c) for c in coeffs])
    if not vanish:
        return 0
    return rank(vanish)


def _linear_extensions(format: SystemFormat) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Rank orders compatible with the componentwise order of index tuples.

    Increasing any index lowers the composed sum, so ranks must increase
    along the product order.
    """
    tuples = format.tuples()
    preds = {t: [s for s in tuples
                 if s != t and all(a <= b for a, b in zip(s, t))]
             for t in tuples}

    def rec(placed: list[tuple[int, ...]], remaining: set):
        if not remaining:
            yield tuple(placed)
            return
        done = set(placed)
        for t in sorted(remaining):
            if all(p in done for p in preds[t]):
                placed.append(t)
                remaining.remove(t)
                yield from rec(placed, remaining)
                remaining.add(t)
                placed.pop()

    yield from rec([], set(tuples))


def candidate_rankings(format: SystemFormat) -> list[CubicleRanking]:
    """Monotone rankings (standard rectangular tableaux when bipartite)."""
    return [CubicleRanking(format, order) for order in _linear_extensions(format)]


def is_realizable(ranking: CubicleRanking) -> bool:
    """Exact LP: does some chamber point order the sums strictly this way?

    Maximizes a uniform slack between consecutive ranks; the open cubicle is
    nonempty iff the optimum slack is positive.
    """
    fmt = ranking.format
    L = sum(fmt.dims)
    offsets = [sum(fmt.dims[:c]) for c in range(fmt.rank)]
    lp = LinearProgram(L + 1, [Fraction(0)] * L + [Fraction(1)], maximize=True)
    for row in _sum_rows(fmt):
        lp.add_constraint(row + [Fraction(0)], EQ, 0)
    for t, s in zip(ranking.order, ranking.order[1:]):
        row = [Fraction(0)] * (L + 1)
        for c in range(fmt.rank):
            row[offsets[c] + t[c] - 1] += 1
            row[offsets[c] + s[c] - 1] -= 1
        row[L] = Fraction(-1)
        lp.add_constraint(row, GEQ, 0)
    bound = [Fraction(0)] * L + [Fraction(1)]
    lp.add_constraint(bound, LEQ, 1)
    verdict = _float_slack_verdict(lp)
    if verdict is not None:
        return verdict
    res = lp_solve(lp)
    return res.status == "optimal" and res.value > 0


def _float_slack_verdict(lp: LinearProgram) -> Optional[bool]:
    """Fast float solve of the slack LP; None when too close to call."""
    try:
        import numpy as np
        from scipy.optimize import linprog
    except ImportError:
        return None
    c = np.array([-float(v) for v in lp.objective])
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for row, sense, rhs in zip(lp.rows, lp.senses, lp.rhs):
        fr = [float(v) for v in row]
        if sense == EQ:
            A_eq.append(fr)
            b_eq.append(float(rhs))
        elif sense == LEQ:
            A_ub.append(fr)
            b_ub.append(float(rhs))
        else:
            A_ub.append([-v for v in fr])
            b_ub.append(-float(rhs))
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=(None, None), method="highs")
    if not res.success:
        return None
    slack = -res.fun
    if slack > 1e-4:
        return True
    if slack < 1e-9:
        return False
    return None


def cubicles(format: SystemFormat) -> list[CubicleRanking]:
    """All realizable rankings (the top cells of the subdivision)."""
    return [r for r in candidate_rankings(format) if is_realizable(r)]


def ranking_for_edge(edge: Edge, format: Optional[SystemFormat] = None) -> CubicleRanking:
    """A cubicle whose closure contains the edge.

    Ties between equal composed sums break toward the lexicographically
    least rank sequence in row-major tuple order, which matches an
    infinitesimal strictly-decreasing perturbation of the edge point.
    """
    if format is None:
        format = SystemFormat(len(block) for block in edge.components)
    specs = edge.spectra()
    tuples = format.tuples()
    order = sorted(tuples, key=lambda t: ([-composed_value(specs, t)], t))
    return CubicleRanking(format, tuple(order))


def edge_rankings(edge: Edge, format: Optional[SystemFormat] = None) -> list[CubicleRanking]:
    """All cubicles whose closure contains the edge.

    Ranks must weakly follow the composed sums of the edge; within a tie
    block any monotone order is allowed, subject to realizability of the
    resulting open cubicle.
    """
    if format is None:
        format = SystemFormat(len(block) for block in edge.components)
    specs = edge.spectra()
    tuples = format.tuples()
    value = {t: composed_value(specs, t) for t in tuples}
    preds = {t: [s for s in tuples
                 if s != t and all(a <= b for a, b in zip(s, t))]
             for t in tuples}

    def rec(placed: list[tuple[int, ...]], remaining: set):
        if not remaining:
            yield tuple(placed)
            return
        top = max(value[t] for t in remaining)
        done = set(placed)
        for t in sorted(remaining):
            if value[t] == top and all(p in done for p in preds[t]):
                placed.append(t)
                remaining.remove(t)
                yield from rec(placed, remaining)
                remaining.add(t)
                placed.pop()

    out = []
    for order in rec([], set(tuples)):
        ranking = CubicleRanking(format, order)
        if is_realizable(ranking):
            out.append(ranking)
    return out


def multiplicity_type(values: Sequence) -> tuple[int, ...]:
    """Run lengths of repeated values in a weakly decreasing sequence."""
    out = []
    for v, group in itertools.groupby(values):
        out.append(len(list(group)))
    return tuple(out)


def multiplicity_types(edge: Edge) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """(per-component block types, composite block type)."""
    comps = tuple(multiplicity_type(block) for block in edge.components)
    composite = multiplicity_type(edge.composed().values)
    return comps, composite
