import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmarginal.spectra import (Spectrum, SystemFormat, YoungDiagram,
                               compose_spectra, composed_value, conjugate,
                               depth_height, dominance_leq, gale_ryser)


def decreasing_ints(size, lo=-6, hi=6):
    return st.lists(st.integers(lo, hi), min_size=size, max_size=size).map(
        lambda v: tuple(sorted(v, reverse=True)))


class TestSpectrum:
    def test_rejects_increasing(self):
        with pytest.raises(ValueError):
            Spectrum([1, 2])

    def test_normalization_checks(self):
        Spectrum([Fraction(1, 2), Fraction(1, 2)], "one")
        with pytest.raises(ValueError):
            Spectrum([Fraction(1, 2), Fraction(1, 4)], "one")
        with pytest.raises(ValueError):
            Spectrum([1, -2], "zero")
        with pytest.raises(ValueError):
            Spectrum([1, 0], "weird")

    def test_parse_serialize_round_trip(self):
        s = Spectrum.parse("1/2,1/3,1/6")
        assert s.values == (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))
        assert Spectrum.parse(s.serialize()) == s

    def test_parse_decimal_is_exact(self):
        assert Spectrum.parse("0.5,0.25,0.25").values == (
            Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))

    @given(decreasing_ints(4))
    def test_to_trace_zero(self, vals):
        s = Spectrum(vals).to_trace_zero()
        assert s.total == 0
        diffs = [a - b for a, b in zip(vals, vals[1:])]
        sdiffs = [a - b for a, b in zip(s.values, s.values[1:])]
        assert diffs == sdiffs

    def test_primitive(self):
        s = Spectrum([Fraction(3, 4), Fraction(1, 4), Fraction(-1, 1)])
        assert s.primitive().values == (3, 1, -4)
        assert Spectrum([0, 0]).primitive().values == (0, 0)

    def test_scaled_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            Spectrum([1, 0]).scaled(0)


class TestSystemFormat:
    def test_basic_properties(self):
        fmt = SystemFormat((2, 3))
        assert fmt.rank == 2
        assert fmt.composite_dim == 6
        assert fmt.degrees_of_freedom == 3
        assert not fmt.is_qubit
        assert SystemFormat((2, 2, 2)).is_qubit

    def test_parse_serialize(self):
        assert SystemFormat.parse("2x2x3").dims == (2, 2, 3)
        assert SystemFormat((2, 4)).serialize() == "2x4"

    def test_rejects_trivial_dims(self):
        with pytest.raises(ValueError):
            SystemFormat((1, 2))
        with pytest.raises(ValueError):
            SystemFormat(())

    def test_tuples_row_major(self):
        assert SystemFormat((2, 2)).tuples() == [
            (1, 1), (1, 2), (2, 1), (2, 2)]


class TestCompose:
    def test_known_composition(self):
        a = Spectrum([Fraction(2, 3), Fraction(1, 3)])
        b = Spectrum([Fraction(1, 2), Fraction(1, 2)])
        assert compose_spectra([a, b]).values == (
            Fraction(7, 6), Fraction(7, 6), Fraction(5, 6), Fraction(5, 6))

    @given(decreasing_ints(2), decreasing_ints(3))
    def test_composed_values_are_the_multiset(self, a, b):
        sa, sb = Spectrum(a), Spectrum(b)
        composed = compose_spectra([sa, sb])
        fmt = SystemFormat((2, 3))
        values = sorted((composed_value([sa, sb], t) for t in fmt.tuples()),
                        reverse=True)
        assert tuple(values) == composed.values


class TestYoungDiagram:
    def test_trailing_zeros_dropped(self):
        assert YoungDiagram((3, 1, 0, 0)).rows == (3, 1)

    def test_conjugate_involution(self):
        for rows in [(4, 2, 1), (3, 3), (5,), ()]:
            d = YoungDiagram(rows)
            assert conjugate(conjugate(d)) == d
        assert conjugate(YoungDiagram((4, 2, 1))).rows == (3, 2, 1, 1)

    def test_depth_height(self):
        assert depth_height(YoungDiagram((5, 2, 1))) == (3, 3)
        assert depth_height(YoungDiagram(())) == (0, 0)

    def test_dominance(self):
        assert dominance_leq(YoungDiagram((2, 2)), YoungDiagram((3, 1)))
        assert not dominance_leq(YoungDiagram((3, 1)), YoungDiagram((2, 2)))
        with pytest.raises(ValueError):
            dominance_leq(YoungDiagram((2,)), YoungDiagram((3,)))


def brute_zero_one_matrix(rows, cols):
    """Existence of a 0-1 matrix with the given margins, by enumeration."""
    if sum(rows) != sum(cols):
        return False
    ncols = len(cols)
    patterns = []
    for r in rows:
        patterns.append([p for p in itertools.product((0, 1), repeat=ncols)
                         if sum(p) == r])

    def rec(i, remaining):
        if i == len(rows):
            return all(c == 0 for c in remaining)
        for p in patterns[i]:
            nxt = [c - v for c, v in zip(remaining, p)]
            if all(c >= 0 for c in nxt) and rec(i + 1, nxt):
                return True
        return False

    return rec(0, list(cols))


def partitions_up_to(max_parts, max_part):
    out = []
    for k in range(max_parts + 1):
        for rows in itertools.combinations_with_replacement(
                range(max_part, 0, -1), k):
            out.append(rows)
    return out


def test_gale_ryser_matches_brute_force():
    shapes = partitions_up_to(4, 4)
    for lam in shapes:
        for mu in shapes:
            if sum(lam) != sum(mu):
                continue
            expected = brute_zero_one_matrix(lam, mu)
            assert gale_ryser(YoungDiagram(lam), YoungDiagram(mu)) == expected, \
                (lam, mu)


def test_gale_ryser_symmetric():
    shapes = [s for s in partitions_up_to(4, 4) if sum(s) == 6]
    for lam in shapes:
        for mu in shapes:
            assert gale_ryser(YoungDiagram(lam), YoungDiagram(mu)) == \
                gale_ryser(YoungDiagram(mu), YoungDiagram(lam))
