"""Symmetric group characters and Kronecker coefficients.

An independent representation-theoretic oracle.  Characters come from the
Murnaghan-Nakayama border-strip recursion over beta numbers, Kronecker
coefficients from exact class sums, Littlewood-Richardson coefficients from
lattice-word tableau counting.  Nothing here touches the Schubert-calculus
generation pipeline, so agreement between the two is a genuine cross-check.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import lp


def partition(values: Iterable[int]) -> tuple[int, ...]:
    """Validate and normalize a partition (trailing zeros stripped)."""
    rows = tuple(int(v) for v in values)
    while rows and rows[-1] == 0:
        rows = rows[:-1]
    for a, b in zip(rows, rows[1:]):
        if a < b:
            raise ValueError(f"rows {rows} are not weakly decreasing")
    if rows and rows[-1] < 0:
        raise ValueError(f"negative row in {rows}")
    return rows


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All partitions of n with parts bounded by max_part."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def class_size(cycle_type: Sequence[int]) -> int:
    """Size of the conjugacy class with the given cycle type."""
    n = sum(cycle_type)
    denom = 1
    for length in set(cycle_type):
        m = cycle_type.count(length)
        denom *= length ** m * math.factorial(m)
    return math.factorial(n) // denom


def conjugacy_classes(n: int) -> list[tuple[tuple[int, ...], int]]:
    """(cycle type, class size) pairs for S_n."""
    return [(ct, class_size(ct)) for ct in partitions(n)]


def _beta_set(rows: tuple[int, ...], length: int) -> tuple[int, ...]:
    padded = rows + (0,) * (length - len(rows))
    return tuple(padded[i] + (length - 1 - i) for i in range(length))


def _from_beta(betas: Sequence[int]) -> tuple[int, ...]:
    ordered = sorted(betas, reverse=True)
    length = len(ordered)
    rows = tuple(ordered[i] - (length - 1 - i) for i in range(length))
    return partition(rows)


@lru_cache(maxsize=None)
def character(rows: tuple[int, ...], cycle_type: tuple[int, ...]) -> int:
    """Irreducible character chi^rows at the given cycle type.

    Murnaghan-Nakayama in beta-number form: removing a border strip of
    length r subtracts r from one beta number, with sign (-1)^(number of
    beta numbers jumped over).
    """
    lam = partition(rows)
    rho = partition(cycle_type)
    if sum(lam) != sum(rho):
        raise ValueError(f"weight mismatch: |{lam}| vs |{rho}|")
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    betas = set(_beta_set(lam, len(lam)))
    total = 0
    for b in betas:
        target = b - r
        if target < 0 or target in betas:
            continue
        jumped = sum(1 for c in betas if target < c < b)
        smaller = _from_beta((betas - {b}) | {target})
        total += (-1) ** jumped * character(smaller, rest)
    return total


def kronecker(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Kronecker coefficient g(lam, mu, nu) via exact character sums."""
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    n = sum(lam)
    if sum(mu) != n or sum(nu) != n:
        raise ValueError("Kronecker coefficient needs equal weights")
    total = 0
    for ct, size in conjugacy_classes(n):
        total += size * character(lam, ct) * character(mu, ct) * character(nu, ct)
    fact = math.factorial(n)
    if total % fact:
        raise AssertionError("character sum not divisible by n!")
    return total // fact


def _contains(outer: tuple[int, ...], inner: tuple[int, ...]) -> bool:
    padded = inner + (0,) * (len(outer) - len(inner))
    return len(inner) <= len(outer) and all(
        o >= i for o, i in zip(outer, padded))


def lr_coefficient(lam: Sequence[int], mu: Sequence[int],
                   nu: Sequence[int]) -> int:
    """Littlewood-Richardson coefficient C^nu_{lam,mu}.

    Counts semistandard skew tableaux of shape nu/lam and content mu whose
    reverse reading word is a lattice word.  Cells are filled in reverse
    reading order (top to bottom, right to left in each row) so the lattice
    condition prunes incrementally.
    """
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    if sum(nu) != sum(lam) + sum(mu):
        raise ValueError("weights must satisfy |nu| = |lam| + |mu|")
    if not _contains(nu, lam):
        return 0
    inner = lam + (0,) * (len(nu) - len(lam))
    cells = []
    for i, row in enumerate(nu):
        for j in range(row - 1, inner[i] - 1, -1):
            cells.append((i, j))
    k = len(mu)
    filled: dict[tuple[int, int], int] = {}
    counts = [0] * (k + 1)

    def fill(pos: int) -> int:
        if pos == len(cells):
            return 1
        i, j = cells[pos]
        lo = 1
        above = filled.get((i - 1, j))
        if above is not None:
            lo = above + 1
        hi = k
        right = filled.get((i, j + 1))
        if right is not None:
            hi = min(hi, right)
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v - 1] <= counts[v]:
                continue
            filled[(i, j)] = v
            counts[v] += 1
            total += fill(pos + 1)
            counts[v] -= 1
            del filled[(i, j)]
        return total

    return fill(0)


def padded_partition(reduced: Sequence[int], n: int) -> tuple[int, ...]:
    """The diagram (n - |reduced|, reduced), or raise if not a partition."""
    reduced = partition(reduced)
    first = n - sum(reduced)
    if reduced and first < reduced[0]:
        raise ValueError(f"n = {n} too small for reduced diagram {reduced}")
    if first < 0:
        raise ValueError(f"n = {n} too small for reduced diagram {reduced}")
    return partition((first,) + reduced)


def reduced_kronecker(lam_bar: Sequence[int], mu_bar: Sequence[int],
                      nu_bar: Sequence[int],
                      n_cap: int | None = None) -> int:
    """Stable Kronecker coefficient of reduced diagrams.

    Evaluates g((n-|lam_bar|, lam_bar), ...) for growing n until two
    consecutive values agree; per Murnaghan the sequence is eventually
    constant (Vallejo gives an explicit stabilization bound).  Raises if no
    agreement occurs before n_cap.
    """
    lam_bar = partition(lam_bar)
    mu_bar = partition(mu_bar)
    nu_bar = partition(nu_bar)
    if n_cap is None:
        n_cap = sum(lam_bar) + sum(mu_bar) + sum(nu_bar) + 4
    start = max(
        sum(r) + (r[0] if r else 0) for r in (lam_bar, mu_bar, nu_bar))
    start = max(start, 1)
    previous = None
    for n in range(start, n_cap + 1):
        value = kronecker(padded_partition(lam_bar, n),
                          padded_partition(mu_bar, n),
                          padded_partition(nu_bar, n))
        if previous is not None and value == previous:
            return value
        previous = value
    raise ValueError(
        f"reduced Kronecker coefficient unstable up to n = {n_cap}")


def intersection(lam: Sequence[int], mu: Sequence[int]) -> tuple[int, ...]:
    """Row-wise minimum of two diagrams."""
    lam, mu = partition(lam), partition(mu)
    width = max(len(lam), len(mu))
    a = lam + (0,) * (width - len(lam))
    b = mu + (0,) * (width - len(mu))
    return partition(min(x, y) for x, y in zip(a, b))


def max_first_row(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Maximal first row among components of lam (x) mu (Klemm/Dvir)."""
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError("weight mismatch")
    return sum(intersection(lam, mu))


def boundary_kronecker(lam: Sequence[int], mu: Sequence[int],
                       nu: Sequence[int]) -> int:
    """g(lam, mu, nu) when nu_1 attains the maximal first row.

    Dvir / Clausen-Meier:  g = sum over alpha, beta of
    C^lam_{lam^mu, alpha} * C^mu_{lam^mu, beta} * g(alpha, beta, nu_bar)
    where lam^mu is the row-wise intersection and nu_bar drops nu_1.
    """
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    cap = intersection(lam, mu)
    if not nu or nu[0] != sum(cap):
        raise ValueError("nu_1 must equal the maximal first row")
    rest = sum(lam) - sum(cap)
    nu_bar = nu[1:]
    total = 0
    for alpha in partitions(rest):
        left = lr_coefficient(cap, alpha, lam)
        if left == 0:
            continue
        for beta in partitions(rest):
            right = lr_coefficient(cap, beta, mu)
            if right == 0:
                continue
            total += left * right * kronecker(alpha, beta, nu_bar)
    return total


def septagon_count(lam: Sequence[int], mu: Sequence[int],
                   nu: Sequence[int]):
    """Lattice-point formula for two-row Kronecker coefficients.

    Counts integer pairs (a, b) inside the heptagon cut out by the five
    conditions below (convention lam_2 >= mu_2).  For odd n this equals
    g(lam, mu, nu) exactly; for even n boundary points on the line
    b - a = lam_1 - mu_2 get weight 1/2 and the count is only guaranteed
    within absolute error 1, so the result may be a half-integer.
    """
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    if len(lam) > 2 or len(mu) > 2:
        raise ValueError("lam and mu must have at most two rows")
    if len(nu) > 4:
        raise ValueError("nu must have at most four rows")
    if sum(lam) != sum(mu) or sum(lam) != sum(nu):
        raise ValueError("weight mismatch")
    l1, l2 = (lam + (0, 0))[:2]
    m1, m2 = (mu + (0, 0))[:2]
    if l2 < m2:
        l1, l2, m1, m2 = m1, m2, l1, l2
    n1, n2, n3, n4 = (nu + (0, 0, 0, 0))[:4]
    even = sum(lam) % 2 == 0
    total = Fraction(0)
    for a in range(n3 + n4, n2 + n4 + 1):
        for b in range(n2 + n4, min(n2 + n3, n1 + n4) + 1):
            if not (l2 - m2 <= b - a <= l1 - m2):
                continue
            if a + b > l2 + m2:
                continue
            if (a + b) % 2 != (l2 + m2) % 2:
                continue
            if even and b - a == l1 - m2:
                total += Fraction(1, 2)
            else:
                total += 1
    return int(total) if total.denominator == 1 else total


@lru_cache(maxsize=None)
def _assignments(row_sums: tuple[int, ...],
                 cycle_counts: tuple[tuple[int, int], ...]) -> int:
    """Ways to distribute cycles (length, multiplicity pairs) over rows so
    each row's lengths sum to its entry."""
    if not row_sums:
        return 1 if all(m == 0 for _, m in cycle_counts) else 0
    target = row_sums[0]
    lengths = [length for length, _ in cycle_counts]
    total = 0
    ranges = [range(m + 1) for _, m in cycle_counts]
    for pick in itertools.product(*ranges):
        if sum(k * length for k, length in zip(pick, lengths)) != target:
            continue
        ways = 1
        for k, (_, m) in zip(pick, cycle_counts):
            ways *= math.comb(m, k)
        remaining = tuple((length, m - k) for (length, m), k
                          in zip(cycle_counts, pick))
        total += ways * _assignments(row_sums[1:], remaining)
    return total


def perm_module_character(lam: Sequence[int],
                          cycle_type: Sequence[int]) -> int:
    """Character of the permutation module M^lam (tabloids) at a class.

    A tabloid is fixed exactly when every cycle stays inside one row, so
    the value counts assignments of cycles to rows with matching sums.
    """
    lam = partition(lam)
    rho = partition(cycle_type)
    if sum(lam) != sum(rho):
        raise ValueError("weight mismatch")
    counts = tuple((length, rho.count(length)) for length in sorted(set(rho)))
    return _assignments(lam, counts)


def perm_module_mult(lam: Sequence[int], mu: Sequence[int],
                     nu: Sequence[int]) -> int:
    """Multiplicity of the irreducible nu in M^lam tensor M^mu."""
    lam, mu, nu = partition(lam), partition(mu), partition(nu)
    n = sum(lam)
    if sum(mu) != n or sum(nu) != n:
        raise ValueError("weight mismatch")
    total = 0
    for ct, size in conjugacy_classes(n):
        total += (size * perm_module_character(lam, ct)
                  * perm_module_character(mu, ct) * character(nu, ct))
    fact = math.factorial(n)
    if total % fact:
        raise AssertionError("character sum not divisible by n!")
    return total // fact


def quasiclassical_test(lam: Sequence, mu: Sequence, nu: Sequence) -> bool:
    """Whether a nonnegative matrix with margins lam, mu has content
    majorized by nu.

    Exact feasibility LP over the transport polytope.  The sum of the k
    largest entries of p is encoded with the standard epigraph trick:
    sum_k-largest(p) <= N_k  iff  there is t >= 0 with
    sum_ij max(p_ij - t, 0) + k t <= N_k.
    """
    lam = [Fraction(v) for v in lam]
    mu = [Fraction(v) for v in mu]
    nu = [Fraction(v) for v in nu]
    if sum(lam) != sum(mu) or sum(lam) != sum(nu):
        raise ValueError("margins and composite must have equal sums")
    rows, cols = len(lam), len(mu)
    cells = rows * cols
    total = sum(nu)
    prefix = list(itertools.accumulate(nu))
    if len(nu) > cells and sum(nu[:cells]) < total:
        # content has at most `cells` entries, so nu must carry full weight
        # within its first `cells` rows
        return False
    # levels whose prefix bound already equals the total are vacuous
    levels = [k for k in range(1, min(cells, len(prefix)) + 1)
              if prefix[k - 1] < total]
    # variables: p (cells), then per level k: t_k and slacks s_k (cells)
    per_level = 1 + cells
    num = cells + len(levels) * per_level
    prog = lp.LinearProgram(num_vars=num, objective=[Fraction(0)] * num,
                            nonneg=set(range(num)))
    for i in range(rows):
        row = [Fraction(0)] * num
        for j in range(cols):
            row[i * cols + j] = Fraction(1)
        prog.add_constraint(row, lp.EQ, lam[i])
    for j in range(cols):
        row = [Fraction(0)] * num
        for i in range(rows):
            row[i * cols + j] = Fraction(1)
        prog.add_constraint(row, lp.EQ, mu[j])
    for pos, k in enumerate(levels):
        base = cells + pos * per_level
        bound = prefix[min(k, len(prefix)) - 1]
        for c in range(cells):
            row = [Fraction(0)] * num
            row[base + 1 + c] = Fraction(1)
            row[c] = Fraction(-1)
            row[base] = Fraction(1)
            prog.add_constraint(row, lp.GEQ, 0)
        row = [Fraction(0)] * num
        for c in range(cells):
            row[base + 1 + c] = Fraction(1)
        row[base] = Fraction(k)
        prog.add_constraint(row, lp.LEQ, bound)
    return lp.lp_solve(prog).status == lp.OPTIMAL


def depth(lam: Sequence[int]) -> int:
    """Everything below the first row."""
    lam = partition(lam)
    return sum(lam[1:])


def height(lam: Sequence[int]) -> int:
    return len(partition(lam))
