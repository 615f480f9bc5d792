import random
from fractions import Fraction

import pytest

from brute import minimal_in_box
from vass3 import lp
from vass3.diophantine import (BudgetExceeded, DiophantineSystem, SolutionSetDescription, has_solution,
                               integer_solvable, membership_in_solution_set, minimal_solutions,
                               polyhedral_solutions, solve, taming_bound, with_slack)


def test_infix_example():
    d = minimal_solutions(DiophantineSystem([[2, -3]], [1]))
    assert d.U == ((2, 1),) and d.P == ((3, 2),)


def test_single_unknown():
    d = minimal_solutions(DiophantineSystem([[1]], [5]))
    assert d.U == ((5,),) and d.P == ()


def test_two_equations():
    d = minimal_solutions(DiophantineSystem([[1, 1], [1, -1]], [2, 0]))
    assert d.U == ((1, 1),) and d.P == ()


def test_no_solution():
    assert minimal_solutions(DiophantineSystem([[2, 2]], [1])).U == ()


def test_system_validation():
    with pytest.raises(ValueError):
        DiophantineSystem([[1, 2], [1]], [0, 0])
    with pytest.raises(ValueError):
        DiophantineSystem([], [])


def test_taming_bound():
    assert taming_bound(2, 3, 1, 2) == 12
    assert taming_bound(2, 3, 2, 2) == 144
    with pytest.raises(ValueError):
        taming_bound(2, 3, 1, 0)


def test_membership():
    d = SolutionSetDescription(((2, 1),), ((3, 2),))
    assert membership_in_solution_set(d, (5, 3))
    assert (8, 5) in d
    assert not membership_in_solution_set(d, (3, 2))
    assert not membership_in_solution_set(SolutionSetDescription((), ()), (0, 0))


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        minimal_solutions(DiophantineSystem([[7, -11, 13]], [5]), node_cap=10)


def test_inequalities_through_slack():
    # x + y = 4 with x <= 1
    d = solve([[1, 1]], [4], inequalities=[([1, 0], 1)])
    assert set(d.U) == {(0, 4), (1, 3)}
    assert with_slack([[1, 1]], [4], [([1, 0], 1)]).n == 3
    assert not has_solution([[1, 1]], [4], inequalities=[([1, 0], 1), ([0, 1], 2)])


def test_first_only_finds_lightest_level():
    sys = DiophantineSystem([[3, 5, -7]], [11])
    full = minimal_solutions(sys)
    first = minimal_solutions(sys, first_only=True)
    assert min(map(sum, first.U)) == min(map(sum, full.U))


def test_random_against_box(rng):
    for _ in range(60):
        n, m = rng.randint(1, 3), rng.randint(1, 2)
        A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-4, 4) for _ in range(m)]
        d = minimal_solutions(DiophantineSystem(A, b))
        K = max([max(x) for x in d.U + d.P] + [5])
        if K > 14:
            K = 14
        U, P = minimal_in_box(A, b, K)
        assert [x for x in d.U if max(x) <= K] == U
        assert [x for x in d.P if max(x) <= K] == P


def test_integer_solvable():
    assert not integer_solvable([[2, -2]], [1])
    assert integer_solvable([[2, -2]], [2])
    assert integer_solvable([[6, 10, 15]], [1])
    assert not integer_solvable([[2, 0], [0, 3]], [4, 4])
    # the unique rational solution (-8, 0, 13) family is integral
    assert integer_solvable([[-3, 3, -2], [2, -2, 1]], [-2, -3])
    assert not integer_solvable([[1, 1], [1, -1]], [1, 0])


def test_polyhedral_solutions_interval():
    # 2 <= x <= 5 in one unknown
    d = polyhedral_solutions([[1], [-1]], [2, -5])
    assert d.U == ((2,), (3,), (4,), (5,)) and d.P == ()


def test_polyhedral_solutions_unbounded():
    # x - y >= 1: points (1,0) + cone generated by (1,0) and (1,1)
    d = polyhedral_solutions([[1, -1]], [1])
    assert set(d.P) == {(1, 0), (1, 1)}
    assert d.U == ((1, 0),)
    for x in range(6):
        for y in range(6):
            assert ((x, y) in d) == (x - y >= 1)


def test_lp_basic():
    r = lp.linprog([1, 1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert r.status == lp.OPTIMAL and r.value == Fraction(14, 5)
    assert lp.linprog([1], A_ub=[[-1]], b_ub=[0]).status == lp.UNBOUNDED
    assert lp.feasible(A_eq=[[1, 1]], b_eq=[-1]).status == lp.INFEASIBLE


def test_lp_free_variables():
    r = lp.linprog([-1], A_ub=[[-1]], b_ub=[3], free=[0])
    assert r.status == lp.OPTIMAL and r.x == [-3]


def test_integer_minimize():
    # min x + y with 3x - 5y = 1: x = 2, y = 1
    st, x = lp.integer_minimize([1, 1], [[3, -5]], [1], sum_cap=100)
    assert st == lp.OPTIMAL and x == [2, 1]
    assert lp.integer_minimize([1, 1], [[2, 2]], [3], sum_cap=50)[0] == lp.INFEASIBLE
    # nothing strictly below the optimum
    assert lp.integer_minimize([1, 1], [[3, -5]], [1], sum_cap=100, incumbent=3)[0] == lp.INFEASIBLE


def test_integer_minimize_matches_enumeration(rng):
    for _ in range(40):
        n = rng.randint(1, 3)
        A = [[rng.randint(-3, 3) for _ in range(n)]]
        b = [rng.randint(-5, 5)]
        U, _ = minimal_in_box(A, b, 12)
        st, x = lp.integer_minimize([1] * n, A, b, sum_cap=12)
        best = min((sum(u) for u in U if sum(u) <= 12), default=None)
        if best is None:
            assert st == lp.INFEASIBLE
        else:
            assert st == lp.OPTIMAL and sum(x) == best
