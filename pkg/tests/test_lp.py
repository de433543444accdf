import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qmarginal.lp import (EQ, GEQ, INFEASIBLE, LEQ, OPTIMAL, UNBOUNDED,
                          LinearProgram, lp_solve)


def test_simple_max():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0  -> (8/5, 6/5)
    lp = LinearProgram(2, [1, 1], maximize=True, nonneg={0, 1})
    lp.add_constraint([1, 2], LEQ, 4)
    lp.add_constraint([3, 1], LEQ, 6)
    res = lp_solve(lp)
    assert res.status == OPTIMAL
    assert res.value == Fraction(14, 5)
    assert res.x == [Fraction(8, 5), Fraction(6, 5)]


def test_exact_fractions_no_drift():
    lp = LinearProgram(1, [1], maximize=True, nonneg={0})
    lp.add_constraint([Fraction(1, 3)], LEQ, Fraction(1, 7))
    res = lp_solve(lp)
    assert res.value == Fraction(3, 7)


def test_infeasible():
    lp = LinearProgram(1, [0], nonneg={0})
    lp.add_constraint([1], LEQ, -1)
    assert lp_solve(lp).status == INFEASIBLE


def test_unbounded():
    lp = LinearProgram(1, [1], maximize=True, nonneg={0})
    lp.add_constraint([-1], LEQ, 1)
    assert lp_solve(lp).status == UNBOUNDED


def test_equality_and_free_variables():
    # min x with x + y = 3 and y <= 1, x free, y free -> x = 2
    lp = LinearProgram(2, [1, 0])
    lp.add_constraint([1, 1], EQ, 3)
    lp.add_constraint([0, 1], LEQ, 1)
    res = lp_solve(lp)
    assert res.status == OPTIMAL
    assert res.value == 2


def test_degenerate_cycle_guard():
    # classic Beale-style degenerate LP; Bland's rule must terminate
    lp = LinearProgram(4, [Fraction(-3, 4), 150, Fraction(-1, 50), 6],
                       nonneg={0, 1, 2, 3})
    lp.add_constraint([Fraction(1, 4), -60, Fraction(-1, 25), 9], LEQ, 0)
    lp.add_constraint([Fraction(1, 2), -90, Fraction(-1, 50), 3], LEQ, 0)
    lp.add_constraint([0, 0, 1, 0], LEQ, 1)
    res = lp_solve(lp)
    assert res.status == OPTIMAL
    assert res.value == Fraction(-1, 20)


def test_malformed_inputs():
    lp = LinearProgram(2, [1, 1])
    with pytest.raises(ValueError):
        lp.add_constraint([1], LEQ, 0)
    with pytest.raises(ValueError):
        lp.add_constraint([1, 1], "<", 0)


def brute_force_box_max(objective, rows, rhs, bound=4):
    """Optimal value over the integer box [0, bound]^n, for cross-checking
    LPs whose optimum provably sits at an integer point."""
    best = None
    n = len(objective)
    for point in itertools.product(range(bound + 1), repeat=n):
        if all(sum(r * p for r, p in zip(row, point)) <= b
               for row, b in zip(rows, rhs)):
            v = sum(c * p for c, p in zip(objective, point))
            best = v if best is None else max(best, v)
    return best


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_feasible_solutions_satisfy_constraints(data):
    n = data.draw(st.integers(1, 4))
    m = data.draw(st.integers(1, 5))
    obj = data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    lp = LinearProgram(n, obj, maximize=True, nonneg=set(range(n)))
    for _ in range(m):
        row = data.draw(st.lists(st.integers(-4, 4), min_size=n, max_size=n))
        rhs = data.draw(st.integers(0, 8))
        lp.add_constraint(row, LEQ, rhs)
    # cap every variable so the LP is bounded and 0 is feasible
    for j in range(n):
        row = [0] * n
        row[j] = 1
        lp.add_constraint(row, LEQ, 4)
    res = lp_solve(lp)
    assert res.status == OPTIMAL
    for row, sense, rhs in zip(lp.rows, lp.senses, lp.rhs):
        lhs = sum(c * x for c, x in zip(row, res.x))
        assert lhs <= rhs
    assert all(x >= 0 for x in res.x)
    # the reported value is at least the best integer box point
    best = brute_force_box_max(obj, lp.rows, lp.rhs)
    assert res.value >= best
