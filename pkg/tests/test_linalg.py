from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qmarginal.linalg import nullspace, primitive_integer, rank, row_reduce


def frac_matrix(rows, cols):
    return st.lists(
        st.lists(st.integers(-6, 6).map(Fraction), min_size=cols,
                 max_size=cols),
        min_size=rows, max_size=rows)


def test_row_reduce_known():
    m = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    reduced, pivots = row_reduce(m)
    assert pivots == [0]
    assert reduced[0] == [Fraction(1), Fraction(2)]


def test_rank_known():
    assert rank([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]) == 2
    assert rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1
    assert rank([]) == 0


@settings(max_examples=80, deadline=None)
@given(frac_matrix(3, 4))
def test_nullspace_vectors_annihilate(m):
    basis = nullspace(m, 4)
    assert len(basis) == 4 - rank(m)
    for vec in basis:
        for row in m:
            assert sum(a * b for a, b in zip(row, vec)) == 0


@settings(max_examples=60, deadline=None)
@given(frac_matrix(4, 4))
def test_rank_bounds_and_transpose(m):
    r = rank(m)
    assert 0 <= r <= 4
    transpose = [list(col) for col in zip(*m)]
    assert rank(transpose) == r


def test_primitive_integer():
    vec = [Fraction(1, 2), Fraction(-3, 4), Fraction(0)]
    assert primitive_integer(vec) == [2, -3, 0]
    assert primitive_integer([Fraction(4), Fraction(6)]) == [2, 3]
