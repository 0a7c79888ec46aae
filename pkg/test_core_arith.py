import pytest
from hypothesis import assume, example, given
from hypothesis.strategies import integers

from collatz_odds.errors import (
    CollatzError,
    InvalidArgumentError,
    NotPositiveOddError,
    ParityError,
    TerminalNumberError,
    ValuationError,
)
from collatz_odds.modules.core_arith import (
    EVEN,
    ODD,
    ascend_once,
    balanced_residue_mod3,
    descend_once,
    doubling_for_index,
    is_terminal,
    nu2,
    require_pos_odd,
    valid_doubling_parity,
)

odd_numbers = integers(min_value=0, max_value=10 ** 30).map(lambda k: 2 * k + 1)


# (value, expected)
nu2_cases = [(16, 4), (1, 0), (1024, 10), (12, 2), (3 << 200, 200)]

descend_cases = [(5, (1, 4)), (3, (5, 1)), (113, (85, 2)), (151, (227, 1)), (341, (1, 10)), (1, (1, 2))]

ascend_cases = [((1, 6), 21), ((5, 3), 13), ((5, 1), 3), ((1, 2), 1), ((1, 20), 349525), ((85, 8), 7253)]


@pytest.mark.parametrize("n, expected", nu2_cases)
def test_nu2(n, expected):
    assert nu2(n) == expected


@pytest.mark.parametrize("n", [0, -4])
def test_nu2_undefined(n):
    with pytest.raises(ValuationError, match="valuation undefined"):
        nu2(n)


@pytest.mark.parametrize("x, expected", descend_cases)
def test_descend_once(x, expected):
    assert descend_once(x) == expected


@pytest.mark.parametrize("x", [0, -3, 4, 2.0, True, "5"])
def test_require_pos_odd_rejects(x):
    with pytest.raises(NotPositiveOddError):
        require_pos_odd(x)


def test_errors_share_a_base():
    with pytest.raises(CollatzError):
        descend_once(10)
    with pytest.raises(ValueError):
        descend_once(0)


def test_valid_doubling_parity():
    assert valid_doubling_parity(1) == EVEN
    assert valid_doubling_parity(5) == ODD
    with pytest.raises(TerminalNumberError, match="terminal number"):
        valid_doubling_parity(9)


def test_doubling_for_index():
    assert [doubling_for_index(1, i) for i in (1, 2, 3)] == [2, 4, 6]
    assert [doubling_for_index(5, i) for i in (1, 2, 3)] == [1, 3, 5]
    with pytest.raises(InvalidArgumentError):
        doubling_for_index(5, 0)


@pytest.mark.parametrize("x, expected", [(3, True), (1, False), (21, True), (5, False)])
def test_is_terminal(x, expected):
    assert is_terminal(x) is expected


def test_balanced_residue_mod3():
    assert [balanced_residue_mod3(x) for x in (1, 5, 21, 85, 341, 1365)] == [1, -1, 0, 1, -1, 0]


@pytest.mark.parametrize("args, expected", ascend_cases)
def test_ascend_once(args, expected):
    assert ascend_once(*args) == expected


def test_ascend_once_errors():
    with pytest.raises(TerminalNumberError, match="terminal number"):
        ascend_once(9, 2)
    with pytest.raises(ParityError, match="non-integer result"):
        ascend_once(1, 3)
    with pytest.raises(ParityError, match="non-integer result"):
        ascend_once(5, 2)
    with pytest.raises(InvalidArgumentError):
        ascend_once(5, 0)
    with pytest.raises(NotPositiveOddError):
        ascend_once(4, 2)


@given(integers(min_value=1, max_value=2 ** 300))
@example(1)
@example(2 ** 64)
def test_nu2_matches_repeated_division(n):
    e, m = 0, n
    while m % 2 == 0:
        m //= 2
        e += 1
    assert nu2(n) == e


@given(odd_numbers)
def test_descent_lands_on_odd_non_terminal(x):
    r, m = descend_once(x)
    assert r % 2 == 1 and m >= 1
    assert r << m == 3 * x + 1
    assert not is_terminal(r)


@given(odd_numbers, integers(min_value=1, max_value=64))
@example(1, 1)
@example(5, 2)
def test_ascend_descend_round_trip(x, i):
    assume(not is_terminal(x))
    m = doubling_for_index(x, i)
    r = ascend_once(x, m)
    assert 3 * r + 1 == x << m
    assert descend_once(r) == (x, m)


@given(odd_numbers, integers(min_value=1, max_value=40))
def test_doubling_parity_decides_divisibility(x, m):
    assume(not is_terminal(x))
    divisible = ((x << m) - 1) % 3 == 0
    assert divisible == ((m % 2 == 0) == (valid_doubling_parity(x) == EVEN))


def test_ascent_injective_on_small_grid():
    seen = {}
    for x in range(1, 2001, 2):
        if is_terminal(x):
            continue
        for i in range(1, 11):
            m = doubling_for_index(x, i)
            r = ascend_once(x, m)
            assert seen.setdefault(r, (x, m)) == (x, m)
