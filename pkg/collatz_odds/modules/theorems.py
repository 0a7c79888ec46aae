# modules/theorems.py

"""
Standalone verifiers: prime-power congruences, Mersenne/Wagstaff
divisibilities, polynomial factorisation identities, the cycle equation
with bounded exhaustive search, the 3/4 geometric series and the origin
estimate of a descent.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, repeat
from typing import Optional, Tuple

from collatz_odds.errors import InvalidArgumentError
from collatz_odds.modules.core_arith import descend_once, require_pos_odd
from collatz_odds.utils.helpers import render_rational

logger = logging.getLogger(__name__)


def is_odd_prime(p):
    """Trial division; inputs here are small."""
    if p < 3 or p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def check_theorem5(p, n):
    """
    (p+1)^(p^n) ≡ 1 and (p-1)^(p^n) ≡ -1 (mod p^(n+1)) for an odd prime p,
    together with 3^(2^n) ≡ 1 (mod 2^(n+1)).
    """
    if not is_odd_prime(p):
        raise InvalidArgumentError(f"{p} is not an odd prime")
    if n < 0:
        raise InvalidArgumentError(f"n must be nonnegative, got {n}")
    modulus, exponent = p ** (n + 1), p ** n
    plus = pow(p + 1, exponent, modulus) == 1 % modulus
    minus = pow(p - 1, exponent, modulus) == modulus - 1
    two_adic = pow(3, 1 << n, 1 << (n + 1)) == 1 % (1 << (n + 1))
    return plus and minus and two_adic


def check_mersenne_wagstaff(n):
    """
    3^(n+1) | 2^(2·3^n) - 1, 3 ∤ 2^(3^n) - 1 and 3^n | (2^(3^n) + 1)/3.

    The divisibilities are decided with modular exponentiation, which is
    exact and keeps 2^(2·3^n) out of memory.
    """
    if n < 0:
        raise InvalidArgumentError(f"n must be nonnegative, got {n}")
    t = 3 ** n
    power = 3 ** (n + 1)
    mersenne_even = pow(2, 2 * t, power) == 1 % power
    mersenne_odd = pow(2, t, 3) != 1
    # 3^n divides (2^t + 1)/3 exactly when 3^(n+1) divides 2^t + 1
    wagstaff = (pow(2, t, power) + 1) % power == 0
    return mersenne_even and mersenne_odd and wagstaff


def check_repunit_divisibility(n):
    """
    With t = 3^n: 3^n divides the sums of 4^j and of (-2)^j over j < t,
    3 does not divide the sum of 2^j, and the first sum is the product of the other two.
    """
    if n < 0:
        raise InvalidArgumentError(f"n must be nonnegative, got {n}")
    t = 3 ** n
    fours = ((1 << (2 * t)) - 1) // 3
    twos = (1 << t) - 1
    alternating = (1 - (-2) ** t) // 3
    return fours % t == 0 and twos % 3 != 0 and alternating % t == 0 and fours == twos * alternating


def check_theorem8(x, a, m):
    """
    Sum of x^j over j < 2^a equals the product of (x^(2^k) + 1) over k < a, and
    sum of x^(2^a·j) over j < m equals (sum of x^j) times the product over
    k < a of the sums of (-x^(2^k))^j, all over j < m, for odd m.
    """
    if x < 2:
        raise InvalidArgumentError(f"x must be at least 2, got {x}")
    if a < 1:
        raise InvalidArgumentError(f"a must be at least 1, got {a}")
    if m < 1 or m % 2 == 0:
        raise InvalidArgumentError(f"m must be a positive odd integer, got {m}")
    first = sum(x ** j for j in range(1 << a)) == math.prod(x ** (1 << k) + 1 for k in range(a))
    lhs = sum(x ** ((1 << a) * j) for j in range(m))
    rhs = sum(x ** j for j in range(m)) * math.prod(
        sum((-(x ** (1 << k))) ** j for j in range(m)) for k in range(a)
    )
    return first and lhs == rhs


@dataclass(frozen=True)
class CycleCandidate:
    """
    One exponent vector m_{a-1} ... m_b of the cycle equation
    (2^S - 3^n)·x_a = numerator, with its verified solution if there is one.
    """
    exponents: Tuple[int, ...]
    divisor: int
    numerator: int
    solution: Optional[int] = None
    cycle: Tuple[int, ...] = ()

    @property
    def n_odds(self):
        return len(self.exponents)

    @property
    def total(self):
        return sum(self.exponents)

    @property
    def is_trivial(self):
        return self.solution == 1 and all(x == 1 for x in self.cycle)


def _walk_cycle(x, exponents):
    # odds visited from x when every step uses exactly the listed halvings
    odds, current = [x], x
    for m in exponents:
        current, halvings = descend_once(current)
        if halvings != m:
            return None
        odds.append(current)
    return tuple(odds[:-1]) if current == x else None


def cycle_equation(exponents):
    """
    Build the candidate for one exponent vector.

    The numerator sum of 3^(n-1-i)·2^(m_1+...+m_i) is accumulated with a
    rolling prefix sum; a solution is kept only when it is a positive odd
    whose descents use exactly these halvings and close the loop.
    """
    exponents = tuple(exponents)
    if not exponents or any(m < 1 for m in exponents):
        raise InvalidArgumentError("a cycle needs at least one halving count, each >= 1")
    n, total = len(exponents), sum(exponents)
    divisor = (1 << total) - 3 ** n
    numerator, prefix = 0, 0
    for m in exponents:
        numerator = 3 * numerator + (1 << prefix)
        prefix += m
    if divisor <= 0 or numerator % divisor:
        return CycleCandidate(exponents=exponents, divisor=divisor, numerator=numerator)
    x = numerator // divisor
    cycle = _walk_cycle(x, exponents) if x % 2 == 1 else None
    if cycle is None:
        logger.warning("cycle equation for %s has integer solution %d that is not a cycle", exponents, x)
        return CycleCandidate(exponents=exponents, divisor=divisor, numerator=numerator)
    return CycleCandidate(exponents=exponents, divisor=divisor, numerator=numerator, solution=x, cycle=cycle)


def _compositions(total, parts):
    # compositions of total into `parts` positive parts, lexicographic
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(hi - lo for lo, hi in zip(bounds, bounds[1:]))


def _is_canonical_rotation(vector):
    return all(vector <= vector[i:] + vector[:i] for i in range(1, len(vector)))


def _search_prefix(n_odds, max_total, first):
    found = []
    for total in range(max(n_odds, first + n_odds - 1), max_total + 1):
        if (1 << total) <= 3 ** n_odds:
            continue
        for rest in _compositions(total - first, n_odds - 1):
            vector = (first,) + rest
            if not _is_canonical_rotation(vector):
                continue
            candidate = cycle_equation(vector)
            if candidate.solution is not None:
                found.append(candidate)
    return found


def search_cycles(n_odds, max_total, workers=1):
    """
    Exhaustive search of the cycle equation over exponent vectors with n_odds
    entries, each >= 1, summing to at most max_total.

    Each rotation class is examined once, through its lexicographically
    smallest rotation. Work is split by the first exponent.

    Returns:
        list: CycleCandidate entries with solutions, in lexicographic order of exponents
    """
    if n_odds < 1:
        raise InvalidArgumentError(f"n_odds must be at least 1, got {n_odds}")
    if max_total < n_odds:
        raise InvalidArgumentError(f"max_total must be at least n_odds={n_odds}, got {max_total}")
    if workers < 1:
        raise InvalidArgumentError(f"workers must be at least 1, got {workers}")
    firsts = range(1, max_total - n_odds + 2)
    if workers == 1:
        chunks = list(map(_search_prefix, repeat(n_odds), repeat(max_total), firsts))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_search_prefix, repeat(n_odds), repeat(max_total), firsts))
    found = sorted((c for chunk in chunks for c in chunk), key=lambda c: c.exponents)
    for candidate in found:
        if not candidate.is_trivial:
            logger.warning("NON-TRIVIAL CYCLE: odds %s with halvings %s", candidate.cycle, candidate.exponents)
    logger.info("cycle search n=%d S<=%d: %d solution(s)", n_odds, max_total, len(found))
    return found


def cycle_product_check(odds, exps):
    """Exact check of the product of (3 + 1/x) over the cycle against 2^(sum of halvings)."""
    if len(odds) != len(exps):
        raise InvalidArgumentError(f"{len(odds)} odds but {len(exps)} halving counts")
    for x in odds:
        require_pos_odd(x)
    return math.prod(3 + Fraction(1, x) for x in odds) == 2 ** sum(exps)


def series_partial_sum(terms):
    """Sum of (3/4)^k for k < terms, exactly."""
    if terms < 1:
        raise InvalidArgumentError(f"terms must be at least 1, got {terms}")
    ratio = Fraction(3, 4)
    return sum(ratio ** k for k in range(terms))


def series_closed_form(terms):
    """4 - 4·(3/4)^terms, the closed form of series_partial_sum."""
    return 4 - 4 * Fraction(3, 4) ** terms


@dataclass(frozen=True)
class EstimateReport:
    """
    Comparison of a descent's endpoints with the estimate x_0 ≈ 3^n·x_n/2^(b_n)
    and its reverse x_n ≈ 2^(b_n)·x_0/3^n.
    """
    x_n: int
    n: int
    b_n: int
    actual_x0: int
    predicted_x0: Fraction
    relative_error: Fraction
    predicted_x_n: Fraction
    relative_error_x_n: Fraction

    @property
    def log2_estimate(self):
        """log2(3^n·x_n), the halving total expected when x_0 = 1."""
        return self.n * math.log2(3) + math.log2(self.x_n)

    def rendered(self):
        return {
            "predicted_x0": render_rational(self.predicted_x0),
            "relative_error": render_rational(self.relative_error),
            "predicted_x_n": render_rational(self.predicted_x_n),
            "relative_error_x_n": render_rational(self.relative_error_x_n),
            "log2_estimate": render_rational(Fraction(self.log2_estimate)),
        }


def estimate_origin(trace):
    """
    Estimate report for a descent trace with at least one step.

    Args:
        trace (DescentTrace): x_n first, x_0 last

    Returns:
        EstimateReport
    """
    if trace.steps < 1:
        raise InvalidArgumentError("an estimate needs a trace with at least one step")
    x_n, x_0 = trace.start, trace.end
    n, b_n = trace.steps, trace.total_halvings
    predicted_x0 = Fraction(3 ** n * x_n, 1 << b_n)
    predicted_x_n = Fraction((1 << b_n) * x_0, 3 ** n)
    return EstimateReport(
        x_n=x_n,
        n=n,
        b_n=b_n,
        actual_x0=x_0,
        predicted_x0=predicted_x0,
        relative_error=abs(predicted_x0 - x_0) / x_0,
        predicted_x_n=predicted_x_n,
        relative_error_x_n=abs(predicted_x_n - x_n) / x_n,
    )
