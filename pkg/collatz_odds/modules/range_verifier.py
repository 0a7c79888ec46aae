# modules/range_verifier.py

"""
Desk-scale convergence scan over a range of odds.

The range is cut into fixed-size chunks of inputs. Each chunk is scanned by
one worker with its own in-memory cache of resolved tails, and chunk
summaries are merged in input order, so the result does not depend on the
number of workers.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import repeat
from typing import Tuple

from collatz_odds.config import RANGE_CHUNK_SIZE
from collatz_odds.errors import InvalidArgumentError
from collatz_odds.modules.core_arith import descend_once, require_pos_odd

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RangeSummary:
    """
    Aggregate of descend-to-origin over every odd in [lo, hi].

    Maxima record the smallest input attaining them. `repeats` lists inputs
    whose descent met an odd other than 1 twice.
    """
    lo: int
    hi: int
    count: int = 0
    resolved: int = 0
    unresolved: Tuple[int, ...] = ()
    repeats: Tuple[int, ...] = ()
    max_steps: int = 0
    max_steps_input: int = 0
    max_total_halvings: int = 0
    max_total_halvings_input: int = 0
    max_peak: int = 0
    max_peak_input: int = 0
    total_steps: int = 0
    total_halvings: int = 0

    @property
    def mean_halvings(self):
        """Halvings per descending step over the resolved inputs."""
        if not self.total_steps:
            return Fraction(0)
        return Fraction(self.total_halvings, self.total_steps)

    @property
    def all_resolved(self):
        return not self.unresolved and not self.repeats


@dataclass
class _ChunkScan:
    lo: int
    hi: int
    count: int = 0
    resolved: int = 0
    unresolved: list = field(default_factory=list)
    repeats: list = field(default_factory=list)
    max_steps: Tuple[int, int] = (-1, 0)
    max_halvings: Tuple[int, int] = (-1, 0)
    max_peak: Tuple[int, int] = (-1, 0)
    total_steps: int = 0
    total_halvings: int = 0


def _descend_with_cache(x, step_limit, cache):
    """
    (steps, halvings, peak, status) of the descent from x, status being
    "resolved", "unresolved" or "repeat". Tails of resolved descents are cached.
    """
    path, seen = [], set()
    current = x
    while True:
        if current == 1:
            tail = (0, 0, 1)
            break
        if current in cache:
            tail = cache[current]
            break
        if current in seen:
            return len(path), sum(m for _, m in path), None, "repeat"
        if len(path) >= step_limit:
            return len(path), sum(m for _, m in path), None, "unresolved"
        seen.add(current)
        nxt, m = descend_once(current)
        path.append((current, m))
        current = nxt
    steps, halvings, peak = tail
    if len(path) + steps > step_limit:
        return len(path) + steps, None, None, "unresolved"
    # unwind so that every odd on the path gets its own tail
    for odd, m in reversed(path):
        steps, halvings, peak = steps + 1, halvings + m, max(peak, 3 * odd + 1)
        cache[odd] = (steps, halvings, peak)
    return steps, halvings, max(peak, x), "resolved"


def _scan_chunk(lo, hi, step_limit):
    scan = _ChunkScan(lo=lo, hi=hi)
    cache = {}
    for x in range(lo, hi + 1, 2):
        scan.count += 1
        steps, halvings, peak, status = _descend_with_cache(x, step_limit, cache)
        if status == "unresolved":
            scan.unresolved.append(x)
            continue
        if status == "repeat":
            logger.warning("descent of %d repeats an odd other than 1", x)
            scan.repeats.append(x)
            continue
        scan.resolved += 1
        scan.total_steps += steps
        scan.total_halvings += halvings
        # strict comparison keeps the smallest input on ties
        if steps > scan.max_steps[0]:
            scan.max_steps = (steps, x)
        if halvings > scan.max_halvings[0]:
            scan.max_halvings = (halvings, x)
        if peak > scan.max_peak[0]:
            scan.max_peak = (peak, x)
    return scan


def _chunks(lo, hi, size):
    start = lo
    while start <= hi:
        end = min(hi, start + 2 * (size - 1))
        yield start, end
        start = end + 2


def range_verify(lo, hi, step_limit, threads=1, chunk_size=RANGE_CHUNK_SIZE):
    """
    Run descend-to-origin for every odd in [lo, hi].

    Args:
        lo (int): first odd
        hi (int): last odd, at least lo
        step_limit (int): per-input bound on descending steps
        threads (int): worker processes; the summary is the same for any value

    Returns:
        RangeSummary
    """
    require_pos_odd(lo, "lo")
    require_pos_odd(hi, "hi")
    if lo > hi:
        raise InvalidArgumentError(f"lo={lo} exceeds hi={hi}")
    if step_limit < 1 or threads < 1 or chunk_size < 1:
        raise InvalidArgumentError("step_limit, threads and chunk_size must all be at least 1")
    bounds = list(_chunks(lo, hi, chunk_size))
    los, his = [b[0] for b in bounds], [b[1] for b in bounds]
    logger.info("range %d..%d: %d chunk(s) on %d worker(s)", lo, hi, len(bounds), threads)
    if threads == 1:
        scans = list(map(_scan_chunk, los, his, repeat(step_limit)))
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            scans = list(pool.map(_scan_chunk, los, his, repeat(step_limit)))
    summary = _merge(lo, hi, scans)
    if summary.unresolved:
        logger.warning("%d input(s) unresolved after %d steps", len(summary.unresolved), step_limit)
    return summary


def _merge(lo, hi, scans):
    # scans arrive in input order
    best = {"steps": (-1, 0), "halvings": (-1, 0), "peak": (-1, 0)}
    count = resolved = total_steps = total_halvings = 0
    unresolved, repeats = [], []
    for scan in scans:
        count += scan.count
        resolved += scan.resolved
        total_steps += scan.total_steps
        total_halvings += scan.total_halvings
        unresolved.extend(scan.unresolved)
        repeats.extend(scan.repeats)
        for key, value in (("steps", scan.max_steps), ("halvings", scan.max_halvings), ("peak", scan.max_peak)):
            if value[0] > best[key][0]:
                best[key] = value
    return RangeSummary(
        lo=lo,
        hi=hi,
        count=count,
        resolved=resolved,
        unresolved=tuple(unresolved),
        repeats=tuple(repeats),
        max_steps=max(best["steps"][0], 0),
        max_steps_input=best["steps"][1],
        max_total_halvings=max(best["halvings"][0], 0),
        max_total_halvings_input=best["halvings"][1],
        max_peak=max(best["peak"][0], 0),
        max_peak_input=best["peak"][1],
        total_steps=total_steps,
        total_halvings=total_halvings,
    )
