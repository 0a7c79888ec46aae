# cli.py

import logging
import re

import click

from collatz_odds.config import (
    DEFAULT_FORMAT,
    DEFAULT_MAX_N,
    DEFAULT_STEP_LIMIT,
    DEFAULT_THREADS,
    OUTPUT_FORMATS,
    SUITES,
    RunConfig,
)
from collatz_odds.errors import CollatzError
from collatz_odds.main import run


class BigIntParamType(click.ParamType):
    """Decimal literal of any size; Python ints carry the precision."""
    name = "integer"
    _literal = re.compile(r"^[0-9]+$")

    def convert(self, value, param, ctx):
        if isinstance(value, int):
            return value
        text = str(value).strip()
        if not self._literal.match(text):
            self.fail(f"malformed integer literal {value!r}", param, ctx)
        return int(text)


class ScheduleParamType(click.ParamType):
    """Comma-separated doubling counts, e.g. 4,1,2."""
    name = "schedule"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        parts = [p.strip() for p in str(value).split(",")]
        if not parts or not all(BigIntParamType._literal.match(p) for p in parts):
            self.fail(f"malformed schedule {value!r}", param, ctx)
        return tuple(int(p) for p in parts)


class EchoHandler(logging.Handler):
    """Routes log records to stderr through click, which follows stream redirection."""

    def emit(self, record):
        try:
            click.echo(self.format(record), err=True)
        except Exception:
            self.handleError(record)


def configure_logging(verbose):
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    root = logging.getLogger()
    root.handlers = [h for h in root.handlers if not isinstance(h, EchoHandler)]
    handler = EchoHandler()
    handler.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(message)s"))
    root.addHandler(handler)
    root.setLevel(level)


BIG_INT = BigIntParamType()
SCHEDULE = ScheduleParamType()


def limit_option(f):
    return click.option("--limit", "step_limit", type=click.IntRange(min=1), default=DEFAULT_STEP_LIMIT,
                        show_default=True, help="Maximum number of descending steps per input")(f)


def threads_option(f):
    return click.option("--threads", "thread_count", type=click.IntRange(min=1), default=DEFAULT_THREADS,
                        show_default=True, help="Worker processes")(f)


def format_option(f):
    return click.option("--format", "output_format", type=click.Choice(OUTPUT_FORMATS), default=DEFAULT_FORMAT,
                        show_default=True, help="Output layout")(f)


def _execute(command, parameters, output_format=DEFAULT_FORMAT, step_limit=DEFAULT_STEP_LIMIT,
             thread_count=DEFAULT_THREADS):
    try:
        config = RunConfig(command, parameters, output_format, step_limit, thread_count)
    except CollatzError as exc:
        click.echo(f"Error: {exc}", err=True)
        raise SystemExit(2)
    result = run(config)
    for line in result.lines:
        click.echo(line)
    for note in result.notes:
        click.echo(note, err=True)
    raise SystemExit(result.exit_code)


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for per-step detail")
def cli(verbose):
    """Descending and ascending odd-to-odd Collatz operations."""
    configure_logging(verbose)


@cli.command()
@click.argument("inputs", nargs=-1, required=True, type=BIG_INT)
@limit_option
@format_option
def descend(inputs, step_limit, output_format):
    """Descend each odd X to 1."""
    _execute("descend", {"inputs": inputs}, output_format, step_limit)


@cli.command()
@click.argument("x0", type=BIG_INT)
@click.option("--schedule", type=SCHEDULE, default=None, help="Doubling counts m1,m2,... to follow")
@click.option("--count", type=click.IntRange(min=1), default=None, help="First-generation ascents to list")
@format_option
def ascend(x0, schedule, count, output_format):
    """Ascend from X0 along a schedule, or list its first-generation odds."""
    _execute("ascend", {"x0": x0, "schedule": schedule, "count": count}, output_format)


@cli.command()
@click.argument("root", type=BIG_INT)
@click.option("--generations", type=click.IntRange(min=0), required=True)
@click.option("--children", type=click.IntRange(min=1), required=True, help="Ascents taken from each node")
@format_option
def tree(root, generations, children, output_format):
    """Expand the reverse tree above ROOT."""
    _execute("tree", {"root": root, "generations": generations, "children": children}, output_format)


@cli.command()
@click.argument("x", type=BIG_INT)
@limit_option
@format_option
def pattern(x, step_limit, output_format):
    """Halving pattern of the descent from X."""
    _execute("pattern", {"x": x}, output_format, step_limit)


@cli.command()
@click.argument("n", type=click.IntRange(min=1))
@click.argument("x0", type=BIG_INT)
@format_option
def primitive(n, x0, output_format):
    """First-generation residues of X0 modulo 2*3^N."""
    _execute("primitive", {"n": n, "x0": x0}, output_format)


@cli.command()
@click.option("--odds", "n_odds", type=click.IntRange(min=1), required=True, help="Odds in the cycle")
@click.option("--max-total", type=click.IntRange(min=1), required=True, help="Bound on the total halvings")
@threads_option
@format_option
def cycles(n_odds, max_total, thread_count, output_format):
    """Exhaustive cycle search at bounded size."""
    _execute("cycles", {"odds": n_odds, "max_total": max_total}, output_format, thread_count=thread_count)


@cli.command()
@click.option("--suite", type=click.Choice(SUITES), default="all", show_default=True)
@click.option("--max-n", type=click.IntRange(min=1), default=DEFAULT_MAX_N, show_default=True)
@format_option
def verify(suite, max_n, output_format):
    """Run a verification suite."""
    _execute("verify", {"suite": suite, "max_n": max_n}, output_format)


@cli.command()
@click.argument("x", type=BIG_INT)
@limit_option
@format_option
def estimate(x, step_limit, output_format):
    """Compare the descent from X with the 3^n/2^b estimate; X=1 uses the cycle 1-[2]-1."""
    _execute("estimate", {"x": x}, output_format, step_limit)


@cli.command(name="range")
@click.argument("lo", type=BIG_INT)
@click.argument("hi", type=BIG_INT)
@limit_option
@threads_option
@format_option
def range_command(lo, hi, step_limit, thread_count, output_format):
    """Descend every odd in [LO, HI]."""
    _execute("range", {"lo": lo, "hi": hi}, output_format, step_limit, thread_count)


if __name__ == "__main__":
    cli()
