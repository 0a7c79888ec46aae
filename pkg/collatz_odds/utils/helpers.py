# utils/helpers.py

import json
import os
import re
from decimal import Context, Decimal

from collatz_odds.config import DATA_DIR, RECORD_DIGITS
from collatz_odds.errors import InvalidArgumentError

_DESCENT_TOKEN = re.compile(r"^\d+(-\[\d+\]-\d+)*$")


def load_list(file_path):
    """Load the non-empty, non-comment lines of a data file."""
    with open(file_path, 'r') as f:
        lines = [line.split("#", 1)[0].strip() for line in f]
    return [line for line in lines if line]


def data_file(name):
    """Absolute path of a file under the repository data directory."""
    return os.path.join(DATA_DIR, name)


def format_descent(odds, halvings):
    """Bracket notation for descents: x_n-[m]-x_{n-1}-[m]-...-x_0."""
    parts = [str(odds[0])]
    for m, x in zip(halvings, odds[1:]):
        parts.append(f"[{m}]")
        parts.append(str(x))
    return "-".join(parts)


def format_ascent(odds, schedule):
    """Parenthesis notation for ascents: x_0-(m)-x_1-(m)-...-x_n."""
    parts = [str(odds[0])]
    for m, x in zip(schedule, odds[1:]):
        parts.append(f"({m})")
        parts.append(str(x))
    return "-".join(parts)


def parse_descent(line):
    """
    Parse bracket notation back into (odds, halvings).

    Args:
        line (str): e.g. "113-[2]-85-[8]-1"

    Returns:
        tuple: (list of odds, list of halving counts)
    """
    line = line.strip()
    if not _DESCENT_TOKEN.match(line):
        raise InvalidArgumentError(f"not a descent in bracket notation: {line!r}")
    tokens = line.split("-")
    odds = [int(tok) for tok in tokens[0::2]]
    halvings = [int(tok[1:-1]) for tok in tokens[1::2]]
    return odds, halvings


def render_rational(value, digits=RECORD_DIGITS):
    """Render an exact rational with a fixed number of significant digits."""
    ctx = Context(prec=digits)
    quotient = ctx.divide(Decimal(value.numerator), Decimal(value.denominator))
    return format(quotient.normalize(ctx), "f")


def _stringify(value):
    # ints become decimal strings so no consumer truncates them
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    if isinstance(value, dict):
        return {k: _stringify(v) for k, v in value.items()}
    return value


def to_record(**fields):
    """One line of the structured-record stream; field order is preserved."""
    return json.dumps(_stringify(fields), separators=(",", ":"), ensure_ascii=False)


def format_table(header, rows):
    """Left-aligned plain-text table, columns separated by two spaces."""
    cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    return ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
