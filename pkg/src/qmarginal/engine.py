"""Generation of marginal inequalities from extremal edges.

Every inequality has the shape

    sum_c sum_i p^c_i lambda^c_i  <=  sum_k r_k nu_k

with the component coefficients p^c a permutation of an edge's spectrum and
the composite coefficients r a permutation of the composed spectrum.  The
admissible permutations are shuffles of the multiplicity types, weighted by
the structure constants of the specialized Schubert calculus.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from . import schubert as sb
from .chambers import (CubicleRanking, Edge, multiplicity_types,
                       ranking_for_edge)
from .schubert import Permutation, SparsePolynomial
from .spectra import SystemFormat

COMPOSITE_GROUP = -1  # variable group id for the z alphabet


@dataclass(frozen=True)
class MarginalInequality:
    """Integer inequality sum_k r_k nu_k - sum_c sum_i p^c_i lam^c_i >= 0."""

    format: SystemFormat
    composite_coeffs: tuple[int, ...]
    component_coeffs: tuple[tuple[int, ...], ...]

    def canonical(self) -> "MarginalInequality":
        flat = list(self.composite_coeffs)
        for block in self.component_coeffs:
            flat.extend(block)
        g = math.gcd(*flat) if any(flat) else 1
        if g > 1:
            return MarginalInequality(
                self.format,
                tuple(v // g for v in self.composite_coeffs),
                tuple(tuple(v // g for v in block)
                      for block in self.component_coeffs))
        return self

    def sort_key(self):
        return (self.composite_coeffs, self.component_coeffs)

    def evaluate(self, component_spectra: Sequence, composite_spectrum) -> object:
        """Exact slack: composite side minus component side."""
        rhs = sum(r * v for r, v in zip(self.composite_coeffs,
                                        composite_spectrum.values))
        lhs = 0
        for block, spec in zip(self.component_coeffs, component_spectra):
            lhs += sum(p * v for p, v in zip(block, spec.values))
        return rhs - lhs

    def dual(self) -> "MarginalInequality":
        """Spectral duality (x_1 >= ... >= x_n) -> (-x_n >= ... >= -x_1)."""
        return MarginalInequality(
            self.format,
            tuple(-v for v in reversed(self.composite_coeffs)),
            tuple(tuple(-v for v in reversed(block))
                  for block in self.component_coeffs))

    def permute_subsystems(self, perm: Sequence[int]) -> "MarginalInequality":
        """Relabel subsystems by perm (0-based); dims must be preserved."""
        blocks = tuple(self.component_coeffs[perm[c]]
                       for c in range(len(perm)))
        dims = tuple(self.format.dims[perm[c]] for c in range(len(perm)))
        if dims != self.format.dims:
            raise ValueError("permutation does not preserve the format")
        # composite coefficients index eigenvalues of the joint state and are
        # sorted descending, so they are unchanged by subsystem relabeling
        return MarginalInequality(self.format, self.composite_coeffs, blocks)

    def serialize(self) -> str:
        parts = [" ".join(str(v) for v in self.composite_coeffs)]
        for block in self.component_coeffs:
            parts.append(" ".join(str(v) for v in block))
        return " | ".join(parts) + " >= 0"


@dataclass(frozen=True)
class Provenance:
    edge: Edge
    component_perms: tuple[Permutation, ...]
    composite_perm: Permutation
    coefficient: int


@dataclass
class InequalitySystem:
    format: SystemFormat
    normalization: str = "one"
    inequalities: list[MarginalInequality] = field(default_factory=list)
    provenance: dict[MarginalInequality, Provenance] = field(default_factory=dict)
    _seen: set = field(default_factory=set, repr=False)

    def add(self, ineq: MarginalInequality,
            prov: Optional[Provenance] = None) -> bool:
        ineq = ineq.canonical()
        if ineq in self._seen:
            return False
        self._seen.add(ineq)
        self.inequalities.append(ineq)
        if prov is not None:
            self.provenance[ineq] = prov
        return True

    def sort(self) -> None:
        self.inequalities.sort(key=MarginalInequality.sort_key)

    def __len__(self) -> int:
        return len(self.inequalities)


@dataclass
class GenerationOptions:
    unit_coefficients_only: bool = True
    qubit_fast_path: bool = False
    max_length_override: Optional[int] = None
    # a degenerate edge sits in the closure of several cubicles; with
    # all_cubicles every tie order of the composed sums is tried, while the
    # default keeps one deterministic tie break (the candidate sets agree on
    # every supported format, the single ranking is just much faster)
    all_cubicles: bool = False


def length_bound(format: SystemFormat) -> int:
    """sum of d_c (d_c - 1) / 2, the largest admissible composite length."""
    return sum(d * (d - 1) // 2 for d in format.dims)


def specialize_schubert(ranking: CubicleRanking, w: Sequence[int],
                        max_length: Optional[int] = None) -> SparsePolynomial:
    """phi*_T(S_w): substitute z_k by the sum of component variables."""
    w = sb.check_permutation(w)
    if len(w) != ranking.format.composite_dim:
        raise ValueError("permutation degree does not match the format")
    if max_length is not None and sb.length(w) > max_length:
        raise ValueError(f"length of {w} exceeds bound {max_length}")
    poly = sb.schubert_polynomial_bjs(w, group=COMPOSITE_GROUP)
    mapping = {}
    for k, t in enumerate(ranking.order, start=1):
        linear = SparsePolynomial()
        for c, i in enumerate(t):
            linear = linear + SparsePolynomial.variable(c, i)
        mapping[(COMPOSITE_GROUP, k)] = linear
    return poly.substitute(mapping)


def edge_coefficient(edge: Edge, component_perms: Sequence[Sequence[int]],
                     w: Sequence[int],
                     ranking: Optional[CubicleRanking] = None) -> int:
    """The constant ∂_{u_1} ⊗ ... ⊗ ∂_{u_r} phi*(S_w); 0 on length mismatch."""
    w = sb.check_permutation(w)
    perms = [sb.check_permutation(u) for u in component_perms]
    if sum(sb.length(u) for u in perms) != sb.length(w):
        return 0
    if ranking is None:
        ranking = ranking_for_edge(edge)
    poly = specialize_schubert(ranking, w)
    for c, u in enumerate(perms):
        poly = sb.apply_divided_differences(poly, c, u)
    if poly.is_zero():
        return 0
    return poly.constant_value()


def _inequality_from_shuffles(edge: Edge, perms: Sequence[Permutation],
                              w: Permutation) -> MarginalInequality:
    fmt = SystemFormat(len(block) for block in edge.components)
    composed = edge.composed().values
    n = len(composed)
    r = [0] * n
    w_inv = sb.inverse(w)
    for m in range(n):
        r[m] = int(composed[w_inv[m] - 1])
    comps = []
    for block, u in zip(edge.components, perms):
        u_inv = sb.inverse(u)
        comps.append(tuple(int(block[u_inv[i] - 1]) for i in range(len(block))))
    return MarginalInequality(fmt, tuple(r), tuple(comps))


def basic_inequality(edge: Edge) -> MarginalInequality:
    ids = [sb.identity(len(block)) for block in edge.components]
    n = len(edge.composed())
    return _inequality_from_shuffles(edge, ids, sb.identity(n))


def _admissible_w(edge: Edge, bound: int) -> list[Permutation]:
    _, composite_type = multiplicity_types(edge)
    return sb.shuffles(composite_type, bound)


def _component_shuffle_pool(edge: Edge) -> list[list[tuple[int, Permutation]]]:
    """Per component: (length, shuffle) pairs for its multiplicity type."""
    comp_types, _ = multiplicity_types(edge)
    pool = []
    for block, mu in zip(edge.components, comp_types):
        d = len(block)
        max_l = d * (d - 1) // 2
        pool.append([(sb.length(u), u) for u in sb.shuffles(mu, max_l)])
    return pool


_functional_cache: dict = {}


def _dd_functional(dim: int, u: Permutation, alpha: tuple[int, ...]) -> int:
    """The constant ∂_u x^alpha for a monomial of degree length(u)."""
    key = (dim, u, alpha)
    if key in _functional_cache:
        return _functional_cache[key]
    poly = SparsePolynomial.constant(1)
    for i, e in enumerate(alpha, start=1):
        if e:
            poly = poly * SparsePolynomial.variable(0, i, e)
    poly = sb.apply_divided_differences(poly, 0, u)
    val = poly.constant_value() if not poly.is_zero() else 0
    _functional_cache[key] = val
    return val


class _EdgeCalculator:
    """Structure constants for one edge, shared across all shuffles w.

    phi* sends z_k to a sum of one variable per component, so each monomial
    z^m expands into terms that factor as per-component monomials; applying
    the product of divided differences then reduces to table lookups.
    """

    def __init__(self, edge: Edge, bound: int,
                 ranking: Optional[CubicleRanking] = None):
        self.edge = edge
        self.format = SystemFormat(len(block) for block in edge.components)
        self.ranking = ranking if ranking is not None \
            else ranking_for_edge(edge, self.format)
        self.dims = self.format.dims
        self.r = len(self.dims)
        # z_k expands to one variable index per component
        self.lin = [tuple(i - 1 for i in t) for t in self.ranking.order]
        comp_types, self.composite_type = multiplicity_types(edge)
        self.pools: list[list[Permutation]] = []
        for block, mu in zip(edge.components, comp_types):
            d = len(block)
            self.pools.append(sb.shuffles(mu, d * (d - 1) // 2))
        # u-combos grouped by the per-component length split
        self.combos_by_split: dict[tuple[int, ...], list[tuple[Permutation, ...]]] = {}
        for combo in itertools.product(*self.pools):
            if sum(sb.length(u) for u in combo) > bound:
                continue
            split = tuple(sb.length(u) for u in combo)
            self.combos_by_split.setdefault(split, []).append(combo)
        self._expansion: dict[tuple[int, ...], dict] = {
            (): {tuple((0,) * d for d in self.dims): 1}}
        self._functionals: dict[tuple[int, ...], dict] = {}

    def _expand(self, zmono: tuple[int, ...]) -> dict:
        """Expansion of prod_k z_k^{m_k}; zmono is a sorted tuple of z
        indices (0-based) with repetition."""
        cached = self._expansion.get(zmono)
        if cached is not None:
            return cached
        head, rest = zmono[0], zmono[1:]
        base = self._expand(rest)
        lin = self.lin[head]
        out: dict = {}
        for alphas, coeff in base.items():
            for c in range(self.r):
                mono = list(alphas[c])
                mono[lin[c]] += 1
                key = alphas[:c] + (tuple(mono),) + alphas[c + 1:]
                out[key] = out.get(key, 0) + coeff
        self._expansion[zmono] = out
        return out

    def _functional(self, zmono: tuple[int, ...]) -> dict:
        """Map u-combo -> ∂-value on the expanded monomial."""
        cached = self._functionals.get(zmono)
        if cached is not None:
            return cached
        out: dict = {}
        for alphas, coeff in self._expand(zmono).items():
            split = tuple(sum(a) for a in alphas)
            for combo in self.combos_by_split.get(split, ()):
                prod = coeff
                for c, u in enumerate(combo):
                    prod *= _dd_functional(self.dims[c], u, alphas[c])
                    if prod == 0:
                        break
                if prod:
                    out[combo] = out.get(combo, 0) + prod
        self._functionals[zmono] = out
        return out

    def coefficients(self, w: Permutation) -> dict[tuple[Permutation, ...], int]:
        """c_{u...}^w for every admissible u-combo of matching length."""
        lw = sb.length(w)
        poly = sb.schubert_polynomial_bjs(w, group=COMPOSITE_GROUP)
        totals: dict[tuple[Permutation, ...], int] = {}
        for mono, coeff in poly.terms.items():
            zmono = []
            for (_, k), e in mono:
                zmono.extend([k - 1] * e)
            zmono.sort()
            for combo, val in self._functional(tuple(zmono)).items():
                if sum(sb.length(u) for u in combo) != lw:
                    continue
                totals[combo] = totals.get(combo, 0) + coeff * val
        return {combo: v for combo, v in totals.items() if v}


def edge_inequalities(edge: Edge, opts: GenerationOptions,
                      bound: int) -> Iterator[tuple[MarginalInequality, Provenance]]:
    """All admissible shuffle triples with accepted coefficient for one edge.

    Every cubicle containing the edge in its closure contributes; for a
    degenerate edge different tie orders of the composed sums may accept
    different shuffle triples.
    """
    from .chambers import edge_rankings

    if opts.all_cubicles:
        rankings = edge_rankings(edge)
    else:
        rankings = [ranking_for_edge(edge)]
    for ranking in rankings:
        calc = _EdgeCalculator(edge, bound, ranking)
        for w in sb.shuffles(calc.composite_type, bound):
            for combo, coeff in calc.coefficients(w).items():
                if opts.unit_coefficients_only and coeff != 1:
                    continue
                ineq = _inequality_from_shuffles(edge, combo, w)
                yield ineq, Provenance(edge, combo, w, coeff)


def qubit_candidates(edge: Edge) -> list[tuple[MarginalInequality, Provenance]]:
    """Fast path for qubit arrays: basic inequality plus odd-transposition
    modifications with one sign flip on the left hand side.

    The mod-2 argument leaves exactly these as the unit-coefficient
    candidates: the composed coefficients swapped at an odd position pair
    (2j-1, 2j) across a strict descent, with the spectrum of one nonzero
    qubit reversed.
    """
    fmt = SystemFormat(len(block) for block in edge.components)
    if not fmt.is_qubit:
        raise ValueError("qubit fast path needs an all-qubit format")
    n = fmt.rank
    N = fmt.composite_dim
    composed = edge.composed().values
    ids = tuple(sb.identity(2) for _ in range(n))
    out = [(basic_inequality(edge),
            Provenance(edge, ids, sb.identity(N), 1))]
    s1 = sb.adjacent_transposition(2, 1)
    ranking = ranking_for_edge(edge, fmt)
    for j in range(1, N // 2 + 1):
        pos = 2 * j - 1
        if composed[pos - 1] == composed[pos]:
            continue  # not a shuffle of the composite multiplicity type
        w = sb.adjacent_transposition(N, pos)
        top = ranking.order[:pos]
        for c in range(n):
            if edge.components[c][0] == edge.components[c][1]:
                continue  # zero qubit admits no nontrivial shuffle
            # S_w(Z) = z_1 + ... + z_{2j-1}, so the structure constant is a
            # plain count difference over the top-ranked index tuples
            coeff = sum(1 if t[c] == 1 else -1 for t in top)
            if coeff != 1:
                continue
            perms = tuple(s1 if cc == c else sb.identity(2)
                          for cc in range(n))
            ineq = _inequality_from_shuffles(edge, perms, w)
            out.append((ineq, Provenance(edge, perms, w, coeff)))
    return out


def generate_system(format: SystemFormat,
                    opts: Optional[GenerationOptions] = None,
                    edges: Optional[list[Edge]] = None) -> InequalitySystem:
    """Candidate inequality system over all extremal edges."""
    from .chambers import extremal_edges

    if opts is None:
        opts = GenerationOptions()
    if opts.qubit_fast_path and not format.is_qubit:
        raise ValueError("qubit fast path needs an all-qubit format")
    if edges is None:
        edges = extremal_edges(format)
    bound = opts.max_length_override
    if bound is None:
        bound = length_bound(format)
    system = InequalitySystem(format)
    for edge in edges:
        if opts.qubit_fast_path:
            items = qubit_candidates(edge)
        else:
            items = edge_inequalities(edge, opts, bound)
        for ineq, prov in items:
            system.add(ineq, prov)
    system.sort()
    return system
