from fractions import Fraction

import pytest

from gamelattice import lp


def F(x):
    return Fraction(x)


def test_simple_maximum():
    # max x + y subject to x + 2y <= 4, 3x + y <= 6
    value, x = lp.simplex_maximize(
        [F(1), F(1)], [[F(1), F(2)], [F(3), F(1)]], [F(4), F(6)]
    )
    assert value == Fraction(14, 5)
    assert x == [Fraction(8, 5), Fraction(6, 5)]


def test_equality_constraint():
    # max x subject to x + y == 1
    value, x = lp.simplex_maximize([F(1), F(0)], lhs_eq=[[F(1), F(1)]], rhs_eq=[F(1)])
    assert value == 1
    assert x[0] == 1 and x[1] == 0


def test_negative_rhs_feasible():
    # max -x subject to -x <= -2  (i.e. x >= 2)
    value, x = lp.simplex_maximize([F(-1)], [[F(-1)]], [F(-2)])
    assert value == -2
    assert x == [F(2)]


def test_infeasible():
    # x <= 1 and x >= 2
    with pytest.raises(lp.Infeasible):
        lp.simplex_maximize([F(0)], [[F(1)], [F(-1)]], [F(1), F(-2)])


def test_unbounded():
    with pytest.raises(lp.Unbounded):
        lp.simplex_maximize([F(1)], [[F(-1)]], [F(0)])


def test_exact_fractions_survive():
    # max x subject to 3x <= 1
    value, x = lp.simplex_maximize([F(1)], [[F(3)]], [F(1)])
    assert value == Fraction(1, 3)
    assert isinstance(value, Fraction)


def test_degenerate_free_variable_split_terminates():
    # max t+ - t- subject to t+ - t- <= 5; Bland's rule must not cycle
    value, x = lp.simplex_maximize([F(1), F(-1)], [[F(1), F(-1)]], [F(5)])
    assert value == 5


def test_zero_objective_feasibility():
    value, x = lp.simplex_maximize(
        [F(0), F(0)], lhs_eq=[[F(1), F(1)]], rhs_eq=[F(1)]
    )
    assert value == 0
    assert sum(x) == 1
