"""Exact rational spectra and Young diagram combinatorics.

A spectrum is a weakly decreasing tuple of rationals, normalized either to
trace one (density-matrix eigenvalues) or trace zero (test directions in the
Weyl chamber).  Young diagrams reuse the same representation with integer
entries.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

TRACE_ONE = "one"
TRACE_ZERO = "zero"


def _as_fractions(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class Spectrum:
    """Weakly decreasing sequence of exact rationals."""

    values: tuple[Fraction, ...]
    normalization: Optional[str] = None

    def __init__(self, values: Iterable, normalization: Optional[str] = None):
        vals = _as_fractions(values)
        for a, b in zip(vals, vals[1:]):
            if a < b:
                raise ValueError(f"spectrum {vals} is not weakly decreasing")
        total = sum(vals, Fraction(0))
        if normalization == TRACE_ONE:
            if total != 1 or (vals and vals[-1] < 0):
                raise ValueError(f"not a trace-one spectrum: {vals}")
        elif normalization == TRACE_ZERO:
            if total != 0:
                raise ValueError(f"not a trace-zero spectrum: {vals}")
        elif normalization is not None:
            raise ValueError(f"unknown normalization {normalization!r}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "normalization", normalization)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def to_trace_zero(self) -> "Spectrum":
        """Shift by the mean so the entries sum to zero."""
        n = len(self.values)
        mean = self.total / n
        return Spectrum([v - mean for v in self.values], TRACE_ZERO)

    def scaled(self, factor) -> "Spectrum":
        f = Fraction(factor)
        if f <= 0:
            raise ValueError("scale factor must be positive")
        tag = self.normalization if f == 1 else (
            TRACE_ZERO if self.normalization == TRACE_ZERO else None)
        return Spectrum([v * f for v in self.values], tag)

    def primitive(self) -> "Spectrum":
        """Scale a nonzero rational direction to a primitive integer vector."""
        nums = [v.numerator for v in self.values]
        dens = [v.denominator for v in self.values]
        lcm = math.lcm(*dens) if dens else 1
        ints = [n * (lcm // d) for n, d in zip(nums, dens)]
        g = math.gcd(*ints) if any(ints) else 1
        if g == 0:
            g = 1
        return Spectrum([Fraction(i // g) for i in ints], self.normalization)

    def serialize(self) -> str:
        return ",".join(str(v) for v in self.values)

    @staticmethod
    def parse(text: str, normalization: Optional[str] = None) -> "Spectrum":
        parts = [p.strip() for p in text.split(",") if p.strip()]
        vals = []
        for p in parts:
            if "." in p:
                # decimal literal read as an exact ratio of its digits
                whole, frac = p.split(".", 1)
                vals.append(Fraction(int(whole + frac), 10 ** len(frac)))
            else:
                vals.append(Fraction(p))
        return Spectrum(vals, normalization)


@dataclass(frozen=True)
class SystemFormat:
    """Subsystem dimensions (d_1, ..., d_r)."""

    dims: tuple[int, ...]

    def __init__(self, dims: Iterable[int]):
        ds = tuple(int(d) for d in dims)
        if not ds or any(d < 2 for d in ds):
            raise ValueError(f"invalid format dims {ds}")
        object.__setattr__(self, "dims", ds)

    @property
    def rank(self) -> int:
        return len(self.dims)

    @property
    def composite_dim(self) -> int:
        return math.prod(self.dims)

    @property
    def degrees_of_freedom(self) -> int:
        """D = sum of (d_c - 1), the dimension of the chamber product."""
        return sum(d - 1 for d in self.dims)

    @property
    def is_qubit(self) -> bool:
        return all(d == 2 for d in self.dims)

    def tuples(self) -> list[tuple[int, ...]]:
        """All index tuples (i_1, ..., i_r), 1-based, in row-major order."""
        return list(itertools.product(*(range(1, d + 1) for d in self.dims)))

    def serialize(self) -> str:
        return "x".join(str(d) for d in self.dims)

    @staticmethod
    def parse(text: str) -> "SystemFormat":
        return SystemFormat(int(p) for p in text.lower().split("x"))

    def __str__(self) -> str:
        return self.serialize()


def compose_spectra(specs: Sequence[Spectrum]) -> Spectrum:
    """All sums a_{i1} + b_{i2} + ... arranged in nonincreasing order."""
    if not specs:
        raise ValueError("need at least one spectrum")
    sums = [Fraction(0)]
    for spec in specs:
        sums = [s + v for s in sums for v in spec.values]
    sums.sort(reverse=True)
    tag = None
    if all(s.normalization == TRACE_ZERO for s in specs):
        tag = TRACE_ZERO
    return Spectrum(sums, tag)


def composed_value(specs: Sequence[Spectrum], index_tuple: Sequence[int]) -> Fraction:
    """The composed sum for one 1-based index tuple."""
    return sum((spec.values[i - 1] for spec, i in zip(specs, index_tuple)),
               Fraction(0))


class YoungDiagram:
    """Integer partition; trailing zeros are canonicalized away."""

    def __init__(self, rows: Iterable[int]):
        rs = [int(r) for r in rows]
        while rs and rs[-1] == 0:
            rs.pop()
        for a, b in zip(rs, rs[1:]):
            if a < b:
                raise ValueError(f"rows {rs} not weakly decreasing")
        if rs and rs[-1] < 0:
            raise ValueError("negative row length")
        self.rows = tuple(rs)

    @property
    def weight(self) -> int:
        return sum(self.rows)

    def __eq__(self, other):
        return isinstance(other, YoungDiagram) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"YoungDiagram{self.rows}"

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)


def conjugate(diagram: YoungDiagram) -> YoungDiagram:
    rows = diagram.rows
    if not rows:
        return YoungDiagram(())
    return YoungDiagram(sum(1 for r in rows if r > j) for j in range(rows[0]))


def dominance_leq(lam: YoungDiagram, mu: YoungDiagram) -> bool:
    """True iff every partial sum of lam is at most that of mu."""
    if lam.weight != mu.weight:
        raise ValueError("dominance requires equal weights")
    acc_l = acc_m = 0
    for i in range(max(len(lam.rows), len(mu.rows))):
        acc_l += lam.rows[i] if i < len(lam.rows) else 0
        acc_m += mu.rows[i] if i < len(mu.rows) else 0
        if acc_l > acc_m:
            return False
    return True


def gale_ryser(lam: YoungDiagram, mu: YoungDiagram) -> bool:
    """Existence of a 0-1 matrix with row margins lam and column margins mu."""
    if lam.weight != mu.weight:
        raise ValueError("gale_ryser requires equal weights")
    return dominance_leq(lam, conjugate(mu))


def depth_height(diagram: YoungDiagram) -> tuple[int, int]:
    """(weight minus first row, number of nonzero rows)."""
    if not diagram.rows:
        return 0, 0
    return diagram.weight - diagram.rows[0], len(diagram.rows)
