# main.py

import logging
from dataclasses import dataclass, field
from typing import List

from collatz_odds.config import DEFAULT_MAX_N
from collatz_odds.errors import CollatzError, InvalidArgumentError
from collatz_odds.modules.core_arith import EVEN, balanced_residue_mod3, valid_doubling_parity
from collatz_odds.modules.patterns import ResidueClass, pattern_of, primitive_set
from collatz_odds.modules.range_verifier import range_verify
from collatz_odds.modules.sequences import (
    DescentTrace,
    ascend_with_schedule,
    descend_to_origin,
    enumerate_tree,
    first_generation,
)
from collatz_odds.modules.suites import run_suite
from collatz_odds.modules.theorems import estimate_origin, search_cycles
from collatz_odds.utils.helpers import (
    format_ascent,
    format_descent,
    format_table,
    render_rational,
    to_record,
)

logger = logging.getLogger(__name__)

DEFAULT_ASCENT_COUNT = 6

# output formats each command has a layout for
SUPPORTED_FORMATS = {
    "descend": ("text", "records"),
    "ascend": ("text", "records", "table"),
    "tree": ("text", "records"),
    "pattern": ("text", "records"),
    "primitive": ("text", "records", "table"),
    "cycles": ("text", "records"),
    "verify": ("text", "records"),
    "estimate": ("text", "records"),
    "range": ("text", "records"),
}


@dataclass
class RunResult:
    """Exit status, result lines for stdout and diagnostic notes for stderr."""
    exit_code: int = 0
    lines: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


def _descend(config, result):
    for x in config.parameters["inputs"]:
        trace = descend_to_origin(x, config.step_limit)
        if not trace.resolved:
            result.notes.append(f"note: descent of {x} unresolved after {config.step_limit} steps")
        if config.output_format == "records":
            result.lines.append(to_record(
                input=x,
                steps=trace.steps,
                halvings=list(trace.halvings),
                b_n=trace.total_halvings,
                resolved=trace.resolved,
                odds=list(trace.odds),
            ))
        else:
            result.lines.append(format_descent(trace.odds, trace.halvings))


def _ascend(config, result):
    x0 = config.parameters["x0"]
    schedule = config.parameters.get("schedule")
    fmt = config.output_format
    if schedule:
        trace = ascend_with_schedule(x0, schedule)
        if fmt == "records":
            result.lines.append(to_record(seed=x0, schedule=list(trace.schedule), odds=list(trace.odds), n=trace.n))
        elif fmt == "table":
            rows = [(k + 1, m, x, balanced_residue_mod3(x)) for k, (m, x) in enumerate(zip(trace.schedule, trace.odds[1:]))]
            result.lines.extend(format_table(("k", "m", "x", "mod3"), rows))
        else:
            result.lines.append(format_ascent(trace.odds, trace.schedule))
        return
    children = first_generation(x0, config.parameters.get("count") or DEFAULT_ASCENT_COUNT)
    if fmt == "records":
        result.lines.extend(to_record(x0=x0, m=m, x1=x1, mod3=balanced_residue_mod3(x1)) for m, x1 in children)
    elif fmt == "table":
        result.lines.extend(format_table(("x0", "m", "x1", "mod3"), [(x0, m, x1, balanced_residue_mod3(x1)) for m, x1 in children]))
    else:
        result.lines.extend(format_ascent((x0, x1), (m,)) for m, x1 in children)


def _tree(config, result):
    params = config.parameters
    tree = enumerate_tree(params["root"], params["generations"], params["children"])
    for node in tree.nodes():
        if config.output_format == "records":
            result.lines.append(to_record(value=node.value, generation=node.generation, doubling=node.doubling, terminal=node.terminal))
            continue
        label = str(node.value) if node.doubling is None else f"({node.doubling}) {node.value}"
        result.lines.append("  " * node.generation + label + (" *" if node.terminal else ""))
    counts = list(tree.per_generation_counts)
    if config.output_format == "records":
        result.lines.append(to_record(root=tree.root.value, per_generation_counts=counts, node_count=tree.node_count))
    else:
        result.lines.append(f"nodes per generation: {' '.join(map(str, counts))} (total {tree.node_count})")


def _pattern(config, result):
    x = config.parameters["x"]
    trace = descend_to_origin(x, config.step_limit)
    if not trace.resolved:
        result.notes.append(f"note: descent of {x} unresolved after {config.step_limit} steps; pattern is partial")
    signature = pattern_of(trace)
    # every start in this class descends with the same halvings
    family = ResidueClass(1 << (signature.total + 1), x % (1 << (signature.total + 1)))
    if config.output_format == "records":
        result.lines.append(to_record(input=x, pattern=list(signature.m), n=signature.n, b_n=signature.total, family=str(family)))
    else:
        result.lines.append(f"{x} {signature} n={signature.n} b_n={signature.total} family {family}")


def _primitive(config, result):
    n, x0 = config.parameters["n"], config.parameters["x0"]
    residues = primitive_set(n, x0)
    first = residues[0]
    m_values = range(2 if valid_doubling_parity(x0) == EVEN else 1, first.modulus + 1, 2)
    if config.output_format == "records":
        result.lines.extend(to_record(n=n, x0=x0, m=m, residue=r.residue, modulus=r.modulus) for m, r in zip(m_values, residues))
    elif config.output_format == "table":
        result.lines.extend(format_table(("m", f"x1 mod {first.modulus}"), [(m, r.residue) for m, r in zip(m_values, residues)]))
    else:
        body = ",".join(str(r.residue) for r in residues)
        result.lines.append(f"primitive set n={n} x0={x0}: {{{body}}} (mod {first.modulus})")


def _cycles(config, result):
    params = config.parameters
    found = search_cycles(params["odds"], params["max_total"], workers=config.thread_count)
    for candidate in found:
        if config.output_format == "records":
            result.lines.append(to_record(
                odds=list(candidate.cycle),
                m=list(candidate.exponents),
                total=candidate.total,
                divisor=candidate.divisor,
                trivial=candidate.is_trivial,
            ))
        else:
            odds = ",".join(map(str, candidate.cycle))
            exps = ",".join(map(str, candidate.exponents))
            result.lines.append(f"x=[{odds}] m=[{exps}]")
    if any(not c.is_trivial for c in found):
        result.exit_code = 1


def _verify(config, result):
    records = run_suite(config.parameters["suite"], config.parameters.get("max_n") or DEFAULT_MAX_N)
    failed = [r for r in records if not r.passed]
    if config.output_format == "records":
        result.lines.extend(r.to_record() for r in records)
    else:
        for r in records:
            params = " ".join(f"{k}={v}" for k, v in r.parameters.items())
            result.lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name} {params}".rstrip())
        result.lines.append(f"{len(records)} check(s), {len(failed)} failed")
    if failed:
        result.exit_code = 1


def _estimate(config, result):
    x = config.parameters["x"]
    # the origin is estimated over its trivial cycle 1-[2]-1
    trace = DescentTrace(odds=(1, 1), halvings=(2,)) if x == 1 else descend_to_origin(x, config.step_limit)
    if not trace.resolved:
        result.notes.append(f"note: descent of {x} unresolved after {config.step_limit} steps; estimating to its last odd")
    report = estimate_origin(trace)
    fields = {"x_n": report.x_n, "x_0": report.actual_x0, "n": report.n, "b_n": report.b_n}
    fields.update(report.rendered())
    if config.output_format == "records":
        result.lines.append(to_record(**fields))
    else:
        result.lines.extend(f"{key}: {value}" for key, value in fields.items())


def _range(config, result):
    params = config.parameters
    summary = range_verify(params["lo"], params["hi"], config.step_limit, threads=config.thread_count)
    fields = {
        "lo": summary.lo,
        "hi": summary.hi,
        "count": summary.count,
        "resolved": summary.resolved,
        "unresolved": list(summary.unresolved),
        "repeats": list(summary.repeats),
        "max_steps": summary.max_steps,
        "max_steps_input": summary.max_steps_input,
        "max_total_halvings": summary.max_total_halvings,
        "max_total_halvings_input": summary.max_total_halvings_input,
        "max_peak": summary.max_peak,
        "max_peak_input": summary.max_peak_input,
        "mean_halvings": render_rational(summary.mean_halvings),
    }
    if config.output_format == "records":
        result.lines.append(to_record(**fields))
    else:
        for key, value in fields.items():
            if isinstance(value, list):
                value = " ".join(map(str, value)) or "none"
            result.lines.append(f"{key}: {value}")
    if not summary.all_resolved:
        result.exit_code = 1


COMMAND_HANDLERS = {
    "descend": _descend,
    "ascend": _ascend,
    "tree": _tree,
    "pattern": _pattern,
    "primitive": _primitive,
    "cycles": _cycles,
    "verify": _verify,
    "estimate": _estimate,
    "range": _range,
}


def run(config):
    """
    Execute one command.

    A violated precondition yields exit code 2 with a one-line diagnostic
    and no result lines; failed verifications yield exit code 1.

    Args:
        config (RunConfig): the parsed invocation

    Returns:
        RunResult
    """
    result = RunResult()
    try:
        if config.output_format not in SUPPORTED_FORMATS[config.command]:
            raise InvalidArgumentError(f"{config.command} has no {config.output_format} output")
        logger.debug("running %s with %s", config.command, dict(config.parameters))
        COMMAND_HANDLERS[config.command](config, result)
    except CollatzError as exc:
        return RunResult(exit_code=2, notes=[f"Error: {exc}"])
    return result
