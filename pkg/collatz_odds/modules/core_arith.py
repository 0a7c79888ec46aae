# modules/core_arith.py

"""
Exact primitives on positive odds.

The descending operation maps an odd x to (3x+1)/2^m with m = nu2(3x+1);
the ascending operation maps x to (2^m·x-1)/3 for a doubling count m of the
parity fixed by x mod 3. Odd multiples of 3 are terminal: no ascent leaves them.
"""

import logging

from collatz_odds.errors import (
    InvalidArgumentError,
    NotPositiveOddError,
    ParityError,
    TerminalNumberError,
    ValuationError,
)

logger = logging.getLogger(__name__)

EVEN, ODD = "even", "odd"


def require_pos_odd(x, name="x"):
    """Return x unchanged if it is a positive odd int, raise NotPositiveOddError otherwise."""
    if isinstance(x, bool) or not isinstance(x, int):
        raise NotPositiveOddError(f"{name} must be an integer, got {type(x).__name__}")
    if x < 1:
        raise NotPositiveOddError(f"{name} must be positive, got {x}")
    if x % 2 == 0:
        raise NotPositiveOddError(f"{name} must be odd, got {x}")
    return x


def nu2(n):
    """
    2-adic valuation: the largest e with 2^e dividing n.

    Args:
        n (int): a positive integer

    Returns:
        int: e such that n / 2^e is odd
    """
    if n <= 0:
        raise ValuationError(f"valuation undefined for {n}")
    # n & -n isolates the lowest set bit
    return (n & -n).bit_length() - 1


def descend_once(x):
    """One descending operation: (3x+1) with every factor 2 removed, and the count removed."""
    require_pos_odd(x)
    t = 3 * x + 1
    m = nu2(t)
    return t >> m, m


def is_terminal(x):
    """True for odd multiples of 3, which admit no ascending operation."""
    return x % 3 == 0


def balanced_residue_mod3(x):
    """x mod 3 written as -1, 0 or 1."""
    r = x % 3
    return -1 if r == 2 else r


def valid_doubling_parity(x):
    """
    Parity of the doubling counts m with 2^m·x ≡ 1 (mod 3).

    Returns EVEN for x ≡ 1 (mod 3) and ODD for x ≡ 2 (mod 3).
    """
    require_pos_odd(x)
    if is_terminal(x):
        raise TerminalNumberError(f"terminal number, no ascending operation: 3 divides {x}")
    return EVEN if x % 3 == 1 else ODD


def doubling_for_index(x, i):
    """The i-th valid doubling count of x (i >= 1): 2i for even parity, 2i-1 for odd."""
    if i < 1:
        raise InvalidArgumentError(f"index must be at least 1, got {i}")
    return 2 * i if valid_doubling_parity(x) == EVEN else 2 * i - 1


def ascend_once(x, m):
    """
    One ascending operation (2^m·x - 1)/3.

    Args:
        x (int): positive odd, not a multiple of 3
        m (int): doubling count >= 1 of the parity valid_doubling_parity(x)

    Returns:
        int: the odd r with 3r + 1 = 2^m·x
    """
    require_pos_odd(x)
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InvalidArgumentError(f"doubling count must be an integer >= 1, got {m!r}")
    if is_terminal(x):
        raise TerminalNumberError(f"terminal number, no ascending operation: 3 divides {x}")
    numerator = (x << m) - 1
    if numerator % 3:
        raise ParityError(f"non-integer result: 2^{m}·{x} is not 1 (mod 3)")
    return numerator // 3
