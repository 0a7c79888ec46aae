from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis.strategies import integers

from collatz_odds.errors import InvalidArgumentError, NotPositiveOddError
from collatz_odds.modules.patterns import descent_family_member
from collatz_odds.modules.sequences import DescentTrace, descend_to_origin
from collatz_odds.modules.theorems import (
    check_mersenne_wagstaff,
    check_repunit_divisibility,
    check_theorem5,
    check_theorem8,
    cycle_equation,
    cycle_product_check,
    estimate_origin,
    is_odd_prime,
    search_cycles,
    series_closed_form,
    series_partial_sum,
)

ODD_PRIMES = [p for p in range(3, 32) if is_odd_prime(p)]


def test_is_odd_prime():
    assert ODD_PRIMES == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
    assert not is_odd_prime(2) and not is_odd_prime(1) and not is_odd_prime(9)


@pytest.mark.parametrize("p, n", [(3, 1), (5, 1), (3, 0)])
def test_check_theorem5_examples(p, n):
    assert check_theorem5(p, n)


def test_check_theorem5_desk_bounds():
    assert all(check_theorem5(p, n) for p in ODD_PRIMES for n in range(5))
    with pytest.raises(InvalidArgumentError):
        check_theorem5(9, 1)
    with pytest.raises(InvalidArgumentError):
        check_theorem5(3, -1)


@pytest.mark.parametrize("n", range(9))
def test_check_mersenne_wagstaff(n):
    assert check_mersenne_wagstaff(n)


@pytest.mark.parametrize("n", range(7))
def test_check_repunit_divisibility(n):
    assert check_repunit_divisibility(n)


@pytest.mark.parametrize("args", [(2, 2, 1), (2, 1, 3), (10, 4, 9), (3, 3, 5)])
def test_check_theorem8(args):
    assert check_theorem8(*args)


def test_check_theorem8_preconditions():
    with pytest.raises(InvalidArgumentError):
        check_theorem8(2, 1, 2)
    with pytest.raises(InvalidArgumentError):
        check_theorem8(1, 1, 1)
    with pytest.raises(InvalidArgumentError):
        check_theorem8(2, 0, 1)


def test_cycle_equation_trivial():
    candidate = cycle_equation([2, 2])
    assert (candidate.divisor, candidate.numerator, candidate.solution) == (7, 7, 1)
    assert candidate.cycle == (1, 1)
    assert candidate.is_trivial


def test_cycle_equation_without_solution():
    candidate = cycle_equation([1, 1])
    assert candidate.divisor == -5
    assert candidate.solution is None
    with pytest.raises(InvalidArgumentError):
        cycle_equation([])
    with pytest.raises(InvalidArgumentError):
        cycle_equation([2, 0])


@pytest.mark.parametrize("n_odds, max_total, exponents", [
    (1, 10, (2,)),
    (2, 12, (2, 2)),
    (3, 15, (2, 2, 2)),
])
def test_search_cycles_finds_only_the_trivial_cycle(n_odds, max_total, exponents):
    found = search_cycles(n_odds, max_total)
    assert [c.exponents for c in found] == [exponents]
    assert found[0].is_trivial


def test_search_cycles_worker_count_does_not_change_results():
    assert search_cycles(3, 12, workers=2) == search_cycles(3, 12)


def test_search_cycles_preconditions():
    with pytest.raises(InvalidArgumentError):
        search_cycles(0, 10)
    with pytest.raises(InvalidArgumentError):
        search_cycles(3, 2)
    with pytest.raises(InvalidArgumentError):
        search_cycles(1, 4, workers=0)


@pytest.mark.slow
def test_search_cycles_desk_scale():
    for n_odds in range(1, 5):
        found = search_cycles(n_odds, 24)
        assert [c.exponents for c in found] == [(2,) * n_odds]


def test_cycle_product_check():
    assert cycle_product_check([1], [2])
    assert cycle_product_check([1, 1], [2, 2])
    assert not cycle_product_check([5], [4])
    with pytest.raises(InvalidArgumentError):
        cycle_product_check([1], [2, 2])
    with pytest.raises(NotPositiveOddError):
        cycle_product_check([2], [2])


def test_series():
    assert series_partial_sum(1) == 1
    assert series_partial_sum(2) == Fraction(7, 4)
    assert 4 - series_partial_sum(60) < Fraction(1, 10 ** 6)
    # fifty terms still fall short by about 2.3e-6
    assert 4 - series_partial_sum(50) > Fraction(2, 10 ** 6)
    with pytest.raises(InvalidArgumentError):
        series_partial_sum(0)


@given(integers(min_value=1, max_value=200))
def test_series_closed_form(terms):
    assert series_partial_sum(terms) == series_closed_form(terms)


def test_estimate_origin_worked_example():
    report = estimate_origin(descend_to_origin(26512143, 100))
    assert (report.n, report.b_n, report.actual_x0) == (4, 31, 1)
    assert report.predicted_x_n == Fraction(2 ** 31, 81)
    assert report.rendered()["predicted_x_n"] == "26512143.8"
    assert report.relative_error_x_n < Fraction(1, 10 ** 7)


def test_estimate_origin_small_cases():
    trivial = estimate_origin(DescentTrace(odds=(1, 1), halvings=(2,)))
    assert trivial.predicted_x0 == Fraction(3, 4)
    primitive = estimate_origin(descend_to_origin(15, 3))
    assert primitive.predicted_x0 == Fraction(405, 8)
    assert primitive.rendered()["predicted_x0"] == "50.625"
    assert primitive.relative_error == Fraction(19, 424)
    with pytest.raises(InvalidArgumentError):
        estimate_origin(DescentTrace(odds=(1,)))


@pytest.mark.parametrize("x", [15, 27, 151, 703, 9999])
def test_estimate_sharpens_along_a_family(x):
    trace = descend_to_origin(x, 3)
    errors = [estimate_origin(descent_family_member(trace, j)).relative_error for j in (1, 10, 100, 1000, 10 ** 4)]
    assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
