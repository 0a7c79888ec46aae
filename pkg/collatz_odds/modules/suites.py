# modules/suites.py

"""
Verification suites. Each suite runs a batch of desk-scale checks and
returns one CheckRecord per check; `max_n` scales the bounds of the
heavier checks. Sampling uses a fixed seed so reports are reproducible.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict

from collatz_odds.config import SUITE_SEED
from collatz_odds.errors import CollatzError
from collatz_odds.modules.core_arith import (
    EVEN,
    ascend_once,
    balanced_residue_mod3,
    descend_once,
    doubling_for_index,
    is_terminal,
    nu2,
    valid_doubling_parity,
)
from collatz_odds.modules.patterns import (
    check_theorem4,
    check_theorem9,
    descent_family_member,
    family_member,
    family_of,
    pattern_of,
    primitive_set,
    unit_residue_exponent,
)
from collatz_odds.modules.sequences import (
    ascend_with_schedule,
    descend_to_origin,
    family_one_halving_trace,
    family_two_halvings_trace,
    first_generation,
    origin_one_halving_sequence,
    origin_two_halvings_sequence,
    repeated_odds,
)
from collatz_odds.modules.theorems import (
    check_mersenne_wagstaff,
    check_repunit_divisibility,
    check_theorem5,
    check_theorem8,
    cycle_product_check,
    estimate_origin,
    is_odd_prime,
    search_cycles,
    series_closed_form,
    series_partial_sum,
)
from collatz_odds.utils.helpers import data_file, format_descent, load_list, parse_descent, render_rational, to_record

logger = logging.getLogger(__name__)

golden_sequences = load_list(data_file("golden_sequences.txt"))
first_generation_rows = [tuple(map(int, row.split())) for row in load_list(data_file("first_generation_tables.txt"))]


@dataclass(frozen=True)
class CheckRecord:
    """Outcome of one named check with its parameters and witness values."""
    name: str
    passed: bool
    parameters: Dict[str, Any] = field(default_factory=dict)
    witness: Dict[str, Any] = field(default_factory=dict)

    def to_record(self):
        return to_record(check=self.name, parameters=self.parameters, passed=self.passed, witness=self.witness)


def _desk_bound(max_n, cap):
    return 10 ** min(max_n + 1, cap)


def _non_terminal_odds(limit, start=1):
    return (x for x in range(start, limit + 1, 2) if not is_terminal(x))


def golden_suite(max_n):
    records = []
    for line in golden_sequences:
        odds, halvings = parse_descent(line)
        trace = descend_to_origin(odds[0], len(halvings))
        produced = format_descent(trace.odds, trace.halvings)
        records.append(CheckRecord("golden_descent", produced == line, {"input": odds[0]}, {"expected": line, "produced": produced}))
    constructions = [("origin_one_halving", n, origin_one_halving_sequence) for n in (1, 2, 3)]
    constructions += [("origin_two_halvings", n, origin_two_halvings_sequence) for n in (1, 2)]
    for name, n, build in constructions:
        trace = build(n)
        produced = format_descent(trace.odds, trace.halvings)
        records.append(CheckRecord(name, produced in golden_sequences, {"n": n, "h": 1}, {"produced": produced}))
    primitive = family_one_halving_trace(3, 1)
    produced = format_descent(primitive.odds, primitive.halvings)
    records.append(CheckRecord("primitive_one_halving", produced in golden_sequences, {"n": 3, "j": 1}, {"produced": produced}))
    return records


def tables_suite(max_n):
    records = []
    for x0, m, x1, residue in first_generation_rows:
        i = (m + 1) // 2
        produced_m, produced = first_generation(x0, i)[-1]
        passed = produced_m == m and produced == x1 and balanced_residue_mod3(produced) == residue
        records.append(CheckRecord("first_generation_row", passed, {"x0": x0, "m": m}, {"x1": produced, "mod3": balanced_residue_mod3(produced)}))
    return records


def core_suite(max_n):
    rng = random.Random(SUITE_SEED)
    limit = _desk_bound(max_n, 5)
    records = []

    failures = [
        (x, m)
        for x in _non_terminal_odds(limit)
        for m in range(1, 41)
        if (pow(2, m, 3) * x % 3 == 1) != ((m % 2 == 0) == (valid_doubling_parity(x) == EVEN))
    ]
    records.append(CheckRecord("doubling_parity", not failures, {"max_x": limit, "max_m": 40}, {"failures": failures[:5]}))

    bad = [x for x in range(1, limit * 10, 2) if is_terminal(descend_once(x)[0])]
    records.append(CheckRecord("descent_never_terminal", not bad, {"max_x": limit * 10}, {"failures": bad[:5]}))

    def oracle(n):
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        return e

    bad = [n for n in range(1, limit * 10 + 1) if nu2(n) != oracle(n)]
    records.append(CheckRecord("nu2_oracle", not bad, {"max_n": limit * 10}, {"failures": bad[:5]}))

    bad = []
    for _ in range(limit):
        x = rng.randrange(1, 10 ** 12, 2)
        if is_terminal(x):
            continue
        m = doubling_for_index(x, rng.randint(1, 32))
        r = ascend_once(x, m)
        if 3 * r + 1 != x << m or descend_once(r) != (x, m):
            bad.append((x, m))
    records.append(CheckRecord("ascent_round_trip", not bad, {"samples": limit, "max_m": 64}, {"failures": bad[:5]}))

    small = _desk_bound(max_n, 4)
    seen, collisions = {}, []
    for x in _non_terminal_odds(small):
        for i in range(1, 11):
            m = doubling_for_index(x, i)
            r = ascend_once(x, m)
            if r in seen and seen[r] != (x, m):
                collisions.append((seen[r], (x, m)))
            seen[r] = (x, m)
    records.append(CheckRecord("ascent_injectivity", not collisions, {"max_x": small, "max_m": 20}, {"outputs": len(seen), "collisions": collisions[:5]}))
    return records


def sequences_suite(max_n):
    limit = _desk_bound(max_n, 4) * 10
    records = []

    unresolved, repeats = [], []
    for x in range(1, limit, 2):
        trace = descend_to_origin(x, 1000)
        if not trace.resolved:
            unresolved.append(x)
        if repeated_odds(trace.odds):
            repeats.append(x)
    records.append(CheckRecord("convergence", not unresolved, {"max_x": limit, "step_limit": 1000}, {"unresolved": unresolved[:5]}))
    records.append(CheckRecord("no_repeated_odds", not repeats, {"max_x": limit}, {"failures": repeats[:5]}))

    bad = []
    for x0 in _non_terminal_odds(999):
        for k in range(1, 11):
            terminal = sum(is_terminal(x1) for _, x1 in first_generation(x0, 3 * k))
            if terminal != k:
                bad.append((x0, k))
    records.append(CheckRecord("terminal_third", not bad, {"max_x0": 999, "max_k": 10}, {"failures": bad[:5]}))

    bad = []
    for n in range(101):
        for x0 in (6 * n + 1, 6 * n + 5):
            try:
                first_generation(x0, 10)
            except CollatzError as exc:
                bad.append((x0, str(exc)))
    records.append(CheckRecord("closed_forms", not bad, {"max_n": 100, "max_index": 10}, {"failures": bad[:5]}))

    for name, build, ratio in (
        ("one_halving_ratio", family_one_halving_trace, Fraction(3, 2)),
        ("two_halvings_ratio", family_two_halvings_trace, Fraction(3, 4)),
    ):
        worst = Fraction(0)
        for n in range(1, 6):
            trace = build(n, 10 ** 4 + 1)
            expected = ratio ** n
            worst = max(worst, abs(Fraction(trace.end, trace.start) - expected) / expected)
        records.append(CheckRecord(name, worst < Fraction(1, 1000), {"j": 10 ** 4 + 1, "max_n": 5}, {"worst_relative_error": render_rational(worst)}))
    return records


def _random_ascent(rng, n, max_m):
    # a valid n-step ascent whose only possible terminal odd is the last one
    while True:
        seed = rng.randrange(1, 2 * 3 ** n, 2)
        if is_terminal(seed):
            continue
        schedule, current = [], seed
        for _ in range(n):
            if is_terminal(current):
                break
            parity_start = 2 if valid_doubling_parity(current) == EVEN else 1
            m = rng.randrange(parity_start, max_m + 1, 2)
            schedule.append(m)
            current = ascend_once(current, m)
        if len(schedule) == n:
            return ascend_with_schedule(seed, schedule)


def patterns_suite(max_n):
    rng = random.Random(SUITE_SEED)
    records = []

    for n in range(1, min(max_n, 3) + 1):
        expected = set(range(1, 2 * 3 ** n, 2))
        bad = []
        for x0 in _non_terminal_odds(99):
            residues = [r.residue for r in primitive_set(n, x0)]
            if len(residues) != 3 ** n or set(residues) != expected:
                bad.append(x0)
        records.append(CheckRecord("primitive_set_complete", not bad, {"n": n, "max_x0": 99}, {"failures": bad[:5]}))
    g2 = [r.residue for r in primitive_set(2, 1)]
    records.append(CheckRecord("primitive_set_g2", g2 == [1, 5, 3, 13, 17, 15, 7, 11, 9], {"n": 2, "x0": 1}, {"residues": g2}))

    bad, disagreements = [], []
    for _ in range(10 ** 4):
        n = rng.randint(1, 3)
        x0 = rng.randrange(1, 10 ** 6, 2)
        if is_terminal(x0):
            continue
        modulus = 2 * 3 ** n
        m0 = rng.randrange(2 if valid_doubling_parity(x0) == EVEN else 1, modulus + 1, 2)
        m = m0 + modulus * rng.randint(0, 50)
        if not check_theorem9(x0, m0, m, n):
            bad.append((x0, m0, m, n))
        m6 = m0 + 6 * rng.randint(0, 50)
        if check_theorem9(x0, m0, m6, 1) != check_theorem4(x0, m0, m6):
            disagreements.append((x0, m0, m6))
    records.append(CheckRecord("congruent_doublings", not bad, {"samples": 10 ** 4, "max_n": 3}, {"failures": bad[:5]}))
    records.append(CheckRecord("mod6_case_agrees", not disagreements, {"samples": 10 ** 4}, {"failures": disagreements[:5]}))

    bad = []
    for _ in range(50):
        primitive = _random_ascent(rng, rng.randint(1, 4), 6)
        family = family_of(primitive)
        moduli = family.moduli()
        for j in range(101):
            member = family_member(family, j)
            chain = all((y - x) % mod == 0 for x, y, mod in zip(family.primitive.odds, member.odds, moduli))
            if pattern_of(member) != pattern_of(primitive) or not chain:
                bad.append((primitive.odds, j))
    records.append(CheckRecord("pattern_stability", not bad, {"families": 50, "max_j": 100}, {"failures": bad[:5]}))

    bad = []
    for x0 in _non_terminal_odds(199):
        m0 = unit_residue_exponent(x0)
        for m, x1 in first_generation(x0, 30):
            if is_terminal(x1) != ((m - m0) % 6 == 4):
                bad.append((x0, m))
    records.append(CheckRecord("terminal_spacing", not bad, {"max_x0": 199, "count": 30}, {"failures": bad[:5]}))
    return records


def theorems_suite(max_n):
    rng = random.Random(SUITE_SEED)
    records = []

    primes = [p for p in range(3, 32) if is_odd_prime(p)]
    bad = [(p, n) for p in primes for n in range(max_n + 1) if not check_theorem5(p, n)]
    records.append(CheckRecord("prime_power_congruences", not bad, {"max_p": 31, "max_n": max_n}, {"failures": bad}))

    bad = [n for n in range(2 * max_n + 1) if not check_mersenne_wagstaff(n)]
    records.append(CheckRecord("mersenne_wagstaff", not bad, {"max_n": 2 * max_n}, {"failures": bad}))
    bad = [n for n in range(2 * max_n + 1) if not check_repunit_divisibility(n)]
    records.append(CheckRecord("repunit_divisibility", not bad, {"max_n": 2 * max_n}, {"failures": bad}))

    bad = [(x, a, m) for x in range(2, 11) for a in range(1, 5) for m in range(1, 10, 2) if not check_theorem8(x, a, m)]
    records.append(CheckRecord("factorisation_identities", not bad, {"max_x": 10, "max_a": 4, "max_m": 9}, {"failures": bad}))

    max_total = 6 * max_n
    for n_odds in range(1, max_n + 1):
        found = search_cycles(n_odds, max_total)
        passed = len(found) == 1 and found[0].is_trivial and all(cycle_product_check(c.cycle, c.exponents) for c in found)
        witness = {"solutions": [{"odds": list(c.cycle), "m": list(c.exponents)} for c in found]}
        records.append(CheckRecord("cycle_search", passed, {"n_odds": n_odds, "max_total": max_total}, witness))

    bad = [t for t in range(1, 61) if series_partial_sum(t) != series_closed_form(t)]
    gap = 4 - series_partial_sum(60)
    records.append(CheckRecord("geometric_series", not bad and gap < Fraction(1, 10 ** 6), {"max_terms": 60}, {"gap_at_60": render_rational(gap)}))

    report = estimate_origin(descend_to_origin(26512143, 100))
    rendered = report.rendered()
    passed = rendered["predicted_x_n"] == "26512143.8" and report.relative_error_x_n < Fraction(1, 10 ** 7) and report.b_n == 31
    records.append(CheckRecord("origin_estimate", passed, {"x_n": 26512143}, rendered))

    bad = []
    for _ in range(10):
        while True:
            trace = descend_to_origin(rng.randrange(3, 10 ** 4, 2), 3)
            if trace.steps == 3 and trace.end != 1:
                break
        errors = [estimate_origin(descent_family_member(trace, j)).relative_error for j in (1, 10, 100, 1000, 10 ** 4)]
        if any(later >= earlier for earlier, later in zip(errors, errors[1:])):
            bad.append(trace.start)
    records.append(CheckRecord("estimate_sharpening", not bad, {"families": 10, "j": [1, 10, 100, 1000, 10 ** 4]}, {"failures": bad}))
    return records


SUITE_RUNNERS = {
    "golden": golden_suite,
    "tables": tables_suite,
    "core": core_suite,
    "sequences": sequences_suite,
    "patterns": patterns_suite,
    "theorems": theorems_suite,
}


def run_suite(name, max_n):
    """
    Run one suite by name ("all" runs every suite in order).

    Returns:
        list: CheckRecord entries
    """
    names = list(SUITE_RUNNERS) if name == "all" else [name]
    records = []
    for suite in names:
        logger.info("suite %s (max_n=%d) started", suite, max_n)
        suite_records = SUITE_RUNNERS[suite](max_n)
        failed = [r.name for r in suite_records if not r.passed]
        if failed:
            logger.warning("suite %s: failed checks %s", suite, failed)
        logger.info("suite %s finished: %d check(s)", suite, len(suite_records))
        records.extend(suite_records)
    return records
