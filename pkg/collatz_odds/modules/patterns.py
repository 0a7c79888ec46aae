# modules/patterns.py

"""
Congruence structure of ascending sequences.

A pattern is the vector of doubling (or halving) counts of a trace. All
ascents from seeds congruent modulo 2·3^n under one n-step schedule share
that pattern, with the k-th odds shifted by 2^(b_k+1)·3^(n-k)·j. The
smallest member of such a family is its primitive sequence.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from collatz_odds.errors import CoherenceError, InvalidArgumentError, ParityError, TerminalNumberError
from collatz_odds.modules.core_arith import (
    EVEN,
    is_terminal,
    require_pos_odd,
    valid_doubling_parity,
)
from collatz_odds.modules.sequences import (
    AscentTrace,
    DescentTrace,
    ascend_with_schedule,
    reverse_trace,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PatternSignature:
    """Ordered doubling/halving counts of a trace, ignoring the sizes of its odds."""
    m: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))

    @property
    def n(self):
        return len(self.m)

    @property
    def total(self):
        return sum(self.m)

    def __str__(self):
        return "[" + ",".join(map(str, self.m)) + "]"


@dataclass(frozen=True)
class ResidueClass:
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidArgumentError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise InvalidArgumentError(f"residue {self.residue} outside [0, {self.modulus})")

    def __contains__(self, x):
        return x % self.modulus == self.residue

    def __str__(self):
        return f"{self.residue} (mod {self.modulus})"


def ascent_residue(x0, m, modulus):
    """(2^m·x0 - 1)/3 reduced modulo `modulus`, without forming 2^m."""
    big = 3 * modulus
    # 3 divides 2^m·x0 - 1, so the division commutes with reduction mod 3M
    return ((pow(2, m, big) * x0 - 1) % big) // 3


def _require_ascent_exponent(x0, m):
    if is_terminal(x0):
        raise TerminalNumberError(f"terminal number, no ascending operation: 3 divides {x0}")
    if m < 1:
        raise InvalidArgumentError(f"doubling count must be at least 1, got {m}")
    if (m % 2 == 0) != (valid_doubling_parity(x0) == EVEN):
        raise ParityError(f"non-integer result: m={m} has the wrong parity for {x0}")


def first_gen_residue_mod6(x0, m):
    """Residue class modulo 6 of the first-generation odd (2^m·x0 - 1)/3."""
    require_pos_odd(x0, "x0")
    _require_ascent_exponent(x0, m)
    return ResidueClass(6, ascent_residue(x0, m, 6))


def check_theorem9(x0, m0, m, n):
    """
    Doubling counts congruent modulo 2·3^n give first-generation odds congruent modulo 2·3^n.

    Returns:
        bool: True iff (2^m·x0-1)/3 ≡ (2^m0·x0-1)/3 (mod 2·3^n)
    """
    require_pos_odd(x0, "x0")
    if n < 1:
        raise InvalidArgumentError(f"n must be at least 1, got {n}")
    modulus = 2 * 3 ** n
    if (m - m0) % modulus:
        raise InvalidArgumentError(f"m={m} is not congruent to m0={m0} modulo {modulus}")
    _require_ascent_exponent(x0, m0)
    _require_ascent_exponent(x0, m)
    return ascent_residue(x0, m, modulus) == ascent_residue(x0, m0, modulus)


def check_theorem4(x0, m0, m):
    """The modulo-6 case: equal residue classes for m ≡ m0 (mod 6)."""
    if (m - m0) % 6:
        raise InvalidArgumentError(f"m={m} is not congruent to m0={m0} modulo 6")
    return first_gen_residue_mod6(x0, m) == first_gen_residue_mod6(x0, m0)


def unit_residue_exponent(x0):
    """Smallest valid doubling count whose ascent from x0 is 1 (mod 3)."""
    require_pos_odd(x0, "x0")
    m = 2 if valid_doubling_parity(x0) == EVEN else 1
    while ascent_residue(x0, m, 3) != 1:
        m += 2
    return m


def pattern_of(trace):
    """The halving vector of a descent or the doubling schedule of an ascent."""
    if isinstance(trace, DescentTrace):
        return PatternSignature(trace.halvings)
    if isinstance(trace, AscentTrace):
        return PatternSignature(trace.schedule.m)
    raise InvalidArgumentError(f"not a trace: {type(trace).__name__}")


@dataclass(frozen=True)
class PatternFamily:
    """
    All ascents sharing the schedule of `primitive`, anchored at its smallest seed.

    Member j has odds y_k = x_k + 2^(b_k+1)·3^(n-k)·j.
    """
    primitive: AscentTrace

    @property
    def n(self):
        return self.primitive.n

    @property
    def prefix_sums(self):
        return self.primitive.prefix_sums

    @property
    def schedule(self):
        return self.primitive.schedule

    @property
    def seed_class(self):
        return ResidueClass(2 * 3 ** self.n, self.primitive.seed % (2 * 3 ** self.n))

    def moduli(self):
        """2^(b_k+1)·3^(n-k) for k = 0 ... n."""
        n = self.n
        return tuple(3 ** (n - k) << (b + 1) for k, b in enumerate(self.prefix_sums))


def family_of(trace):
    """Canonical family of an ascent trace, anchored at the seed reduced modulo 2·3^n."""
    if not isinstance(trace, AscentTrace):
        raise InvalidArgumentError(f"families are built from ascent traces, got {type(trace).__name__}")
    seed = trace.seed % (2 * 3 ** trace.n)
    primitive = ascend_with_schedule(seed, trace.schedule)
    return PatternFamily(primitive=primitive)


def family_contains(family, y0):
    """True iff an ascent from y0 belongs to the family (y0 ≡ x0 mod 2·3^n)."""
    return y0 in family.seed_class


def family_index(family, trace):
    """The j at which `trace` appears in `family`."""
    if pattern_of(trace) != pattern_of(family.primitive) or not family_contains(family, trace.seed):
        raise InvalidArgumentError("trace does not belong to this pattern family")
    return (trace.seed - family.primitive.seed) // (2 * 3 ** family.n)


def family_member(family, j):
    """
    Member j of a pattern family, re-derived step by step from its seed.

    Returns:
        AscentTrace: odds y_k = x_k + 2^(b_k+1)·3^(n-k)·j under the primitive schedule
    """
    if j < 0:
        raise InvalidArgumentError(f"j must be nonnegative, got {j}")
    predicted = tuple(x + modulus * j for x, modulus in zip(family.primitive.odds, family.moduli()))
    derived = ascend_with_schedule(predicted[0], family.schedule)
    if derived.odds != predicted:
        raise CoherenceError(f"family member {j} does not re-derive under schedule {family.schedule.m}")
    return derived


def descent_family_member(trace, j):
    """
    Shift a descent within its pattern: y_n = x_n + 2^(b_n+1)·j descends,
    with the same halvings, to y_0 = x_0 + 2·3^n·j.
    """
    if not isinstance(trace, DescentTrace):
        raise InvalidArgumentError(f"expected a descent trace, got {type(trace).__name__}")
    ascent = reverse_trace(trace)
    family = family_of(ascent)
    member = family_member(family, family_index(family, ascent) + j)
    return reverse_trace(member)


def primitive_set(n, x0):
    """
    Residues modulo 2·3^n of the first-generation odds of x0, one per valid
    doubling count in (0, 2·3^n], in increasing doubling count.

    Returns:
        tuple: ResidueClass entries, 3^n of them
    """
    require_pos_odd(x0, "x0")
    if n < 1:
        raise InvalidArgumentError(f"n must be at least 1, got {n}")
    parity = valid_doubling_parity(x0)
    modulus = 2 * 3 ** n
    first = 2 if parity == EVEN else 1
    residues = tuple(ResidueClass(modulus, ascent_residue(x0, m, modulus)) for m in range(first, modulus + 1, 2))
    if len(set(residues)) != len(residues):
        logger.warning("first-generation residues of %d modulo %d repeat", x0, modulus)
    return residues
