"""Permutations, divided differences and Schubert polynomials.

Permutations are 1-indexed one-line tuples.  Polynomial variables are pairs
(group, position) so that several independent variable groups (one per
subsystem, plus one composite group) can live in a single polynomial.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

Permutation = tuple[int, ...]
Variable = tuple[int, int]
Monomial = tuple[tuple[Variable, int], ...]  # sorted ((group, pos), exponent)


# ---------------------------------------------------------------------------
# permutations


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def check_permutation(w: Sequence[int]) -> Permutation:
    w = tuple(int(v) for v in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"not a permutation of 1..{len(w)}: {w}")
    return w


def length(w: Permutation) -> int:
    """Number of inversions of w."""
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2)
               if w[i] > w[j])


def inverse(w: Permutation) -> Permutation:
    out = [0] * len(w)
    for i, v in enumerate(w):
        out[v - 1] = i + 1
    return tuple(out)


def compose(u: Permutation, v: Permutation) -> Permutation:
    """(u ∘ v)(i) = u(v(i))."""
    return tuple(u[v[i] - 1] for i in range(len(v)))


def longest_element(n: int) -> Permutation:
    return tuple(range(n, 0, -1))


def adjacent_transposition(n: int, i: int) -> Permutation:
    """s_i in S_n (1 <= i < n)."""
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def right_descents(w: Permutation) -> list[int]:
    return [i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]]


def apply_transposition_right(w: Permutation, i: int) -> Permutation:
    """w * s_i (swap positions i, i+1; 1-based)."""
    out = list(w)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def reduced_word(w: Permutation) -> list[int]:
    """One reduced word (i_1, ..., i_l) with w = s_{i_1} ... s_{i_l}."""
    word: list[int] = []
    w = tuple(w)
    while True:
        ds = right_descents(w)
        if not ds:
            break
        i = ds[0]
        word.append(i)
        w = apply_transposition_right(w, i)
    word.reverse()
    return word


def reduced_words(w: Permutation) -> Iterator[list[int]]:
    """All reduced words of w."""
    if not right_descents(w):
        yield []
        return
    for i in right_descents(w):
        for prefix in reduced_words(apply_transposition_right(w, i)):
            yield prefix + [i]


def is_shuffle(w: Permutation, blocks: Sequence[int]) -> bool:
    """True iff w is increasing within each consecutive block of positions."""
    pos = 0
    for b in blocks:
        for k in range(pos, pos + b - 1):
            if w[k] > w[k + 1]:
                return False
        pos += b
    return pos == len(w)


def shuffles(blocks: Sequence[int], max_len: int) -> list[Permutation]:
    """All block shuffles of S_n with at most max_len inversions.

    Built position by position with pruning on the running inversion count,
    so large n with a small length bound stays cheap.
    """
    n = sum(blocks)
    if n == 0:
        return [()]
    block_of = []
    for bi, b in enumerate(blocks):
        block_of.extend([bi] * b)
    results: list[Permutation] = []
    unused = sorted(range(1, n + 1))

    def place(pos: int, prefix: list[int], inv: int, last_in_block: int):
        if pos == n:
            results.append(tuple(prefix))
            return
        same_block = pos > 0 and block_of[pos] == block_of[pos - 1]
        for rank, v in enumerate(unused):
            if same_block and v < last_in_block:
                continue
            added = rank  # smaller unused values placed later
            if inv + added > max_len:
                break
            unused.remove(v)
            prefix.append(v)
            place(pos + 1, prefix, inv + added, v)
            prefix.pop()
            unused.insert(rank, v)

    place(0, [], 0, 0)
    return results


def mahonian_count(n: int, max_len: int) -> int:
    """#{w in S_n : length(w) <= max_len} by the inversion generating function."""
    if n < 1 or max_len < 0:
        raise ValueError("need n >= 1 and max_len >= 0")
    coeffs = [1]
    for k in range(2, n + 1):
        new = [0] * (len(coeffs) + k - 1)
        for e, c in enumerate(coeffs):
            for j in range(k):
                new[e + j] += c
        coeffs = new
    return sum(coeffs[: max_len + 1])


def serialize_permutation(w: Permutation) -> str:
    return ",".join(str(v) for v in w)


def parse_permutation(text: str) -> Permutation:
    return check_permutation(int(p) for p in text.split(","))


# ---------------------------------------------------------------------------
# sparse polynomials


class SparsePolynomial:
    """Multivariate polynomial with exact integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    self.terms[mono] = self.terms.get(mono, 0) + coeff
            self.terms = {m: c for m, c in self.terms.items() if c}

    @staticmethod
    def constant(c: int) -> "SparsePolynomial":
        return SparsePolynomial({(): int(c)} if c else {})

    @staticmethod
    def variable(group: int, pos: int, exponent: int = 1) -> "SparsePolynomial":
        if exponent == 0:
            return SparsePolynomial.constant(1)
        return SparsePolynomial({(((group, pos), exponent),): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"polynomial is not constant: {self}")
        return self.terms.get((), 0)

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in m) for m in self.terms)

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SparsePolynomial(out)

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return SparsePolynomial(out)

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial({m: -c for m, c in self.terms.items()})

    def scale(self, k: int) -> "SparsePolynomial":
        return SparsePolynomial({m: c * k for m, c in self.terms.items()})

    def __mul__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return SparsePolynomial(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparsePolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, mapping: dict[Variable, "SparsePolynomial"]) -> "SparsePolynomial":
        """Replace each mapped variable by a polynomial."""
        result = SparsePolynomial()
        power_cache: dict[tuple[Variable, int], SparsePolynomial] = {}
        for mono, coeff in self.terms.items():
            term = SparsePolynomial.constant(coeff)
            for var, exp in mono:
                if var in mapping:
                    key = (var, exp)
                    if key not in power_cache:
                        p = SparsePolynomial.constant(1)
                        for _ in range(exp):
                            p = p * mapping[var]
                        power_cache[key] = p
                    term = term * power_cache[key]
                else:
                    term = term * SparsePolynomial.variable(var[0], var[1], exp)
            result = result + term
        return result

    def serialize(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            factors = [str(coeff)]
            for (g, i), e in mono:
                v = f"x[{g},{i}]"
                factors.append(v if e == 1 else f"{v}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"SparsePolynomial({self.serialize()})"


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps: dict[Variable, int] = dict(m1)
    for var, e in m2:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


# ---------------------------------------------------------------------------
# divided differences and Schubert polynomials


def swap_variables(f: SparsePolynomial, group: int, i: int) -> SparsePolynomial:
    """Apply the transposition s_i to variables (group, i), (group, i+1)."""
    a, b = (group, i), (group, i + 1)
    out: dict[Monomial, int] = {}
    for mono, coeff in f.terms.items():
        exps = dict(mono)
        ea = exps.pop(a, 0)
        eb = exps.pop(b, 0)
        if eb:
            exps[a] = eb
        if ea:
            exps[b] = ea
        m = tuple(sorted(exps.items()))
        out[m] = out.get(m, 0) + coeff
    return SparsePolynomial(out)


def divided_difference(f: SparsePolynomial, group: int, i: int) -> SparsePolynomial:
    """(f - s_i f) / (x_i - x_{i+1}) within one variable group (1-based i)."""
    a, b = (group, i), (group, i + 1)
    out: dict[Monomial, int] = {}
    for mono, coeff in f.terms.items():
        exps = dict(mono)
        ea = exps.pop(a, 0)
        eb = exps.pop(b, 0)
        if ea == eb:
            continue
        rest = tuple(sorted(exps.items()))
        sign = 1 if ea > eb else -1
        lo, hi = min(ea, eb), max(ea, eb)
        for t in range(hi - lo):
            pair: dict[Variable, int] = {}
            if lo + t:
                pair[a] = lo + t
            if hi - 1 - t:
                pair[b] = hi - 1 - t
            m = _mono_mul(rest, tuple(sorted(pair.items())))
            out[m] = out.get(m, 0) + sign * coeff
    return SparsePolynomial(out)


def apply_divided_differences(f: SparsePolynomial, group: int,
                              w: Permutation) -> SparsePolynomial:
    """Apply the operator ∂_w (for a reduced word of w) within a group."""
    word = reduced_word(w)
    for i in reversed(word):
        f = divided_difference(f, group, i)
    return f


def staircase_monomial(n: int, group: int = 0) -> SparsePolynomial:
    poly = SparsePolynomial.constant(1)
    for i in range(1, n):
        poly = poly * SparsePolynomial.variable(group, i, n - i)
    return poly


def schubert_polynomial(w: Sequence[int], group: int = 0) -> SparsePolynomial:
    """S_w by divided differences from the staircase monomial."""
    w = check_permutation(w)
    n = len(w)
    v = compose(inverse(w), longest_element(n))
    return apply_divided_differences(staircase_monomial(n, group), group, v)


_bjs_cache: dict = {}


def schubert_polynomial_bjs(w: Sequence[int], group: int = 0) -> SparsePolynomial:
    """S_w by the compatible-sequence (pipe dream) expansion.

    Practical when the length of w is small even if n is large, where the
    staircase route is hopeless.
    """
    w = check_permutation(w)
    cached = _bjs_cache.get((w, group))
    if cached is not None:
        return cached
    out: dict[Monomial, int] = {}
    for word in reduced_words(w):
        for seq in _compatible_sequences(word):
            exps: dict[Variable, int] = {}
            for b in seq:
                exps[(group, b)] = exps.get((group, b), 0) + 1
            m = tuple(sorted(exps.items()))
            out[m] = out.get(m, 0) + 1
    poly = SparsePolynomial(out)
    _bjs_cache[(w, group)] = poly
    return poly


def _compatible_sequences(word: list[int]) -> Iterator[tuple[int, ...]]:
    """Weakly increasing b with b_j <= a_j, strict where a ascends."""
    if not word:
        yield ()
        return

    def rec(j: int, prefix: list[int]):
        if j == len(word):
            yield tuple(prefix)
            return
        lo = 1
        if j > 0:
            lo = prefix[-1] + (1 if word[j - 1] < word[j] else 0)
        for b in range(lo, word[j] + 1):
            prefix.append(b)
            yield from rec(j + 1, prefix)
            prefix.pop()

    yield from rec(0, [])


def extend_permutation(w: Permutation, n: int) -> Permutation:
    """Append fixed points so that w lives in S_n."""
    if n < len(w):
        raise ValueError("cannot shrink a permutation")
    return tuple(w) + tuple(range(len(w) + 1, n + 1))
