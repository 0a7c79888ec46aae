# modules/sequences.py

"""
Multi-step traces built from the single-step operations in core_arith.

Descent traces are stored in descent order (x_n first, the endpoint last);
ascent traces are stored from the seed x_0 onwards. reverse_trace converts
between the two.
"""

import logging
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Optional, Tuple

from collatz_odds.errors import (
    CoherenceError,
    InvalidArgumentError,
    ParityError,
    TerminalNumberError,
    TerminalReachedError,
)
from collatz_odds.modules.core_arith import (
    EVEN,
    ascend_once,
    descend_once,
    doubling_for_index,
    is_terminal,
    require_pos_odd,
    valid_doubling_parity,
)

logger = logging.getLogger(__name__)


def _require_links(odds, counts, upward):
    # consecutive odds must satisfy lower·2^m = 3·upper + 1
    for x in odds:
        require_pos_odd(x)
    for k, m in enumerate(counts):
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise InvalidArgumentError(f"step {k}: halving count must be an integer >= 1, got {m!r}")
        upper, lower = (odds[k + 1], odds[k]) if upward else (odds[k], odds[k + 1])
        if lower << m != 3 * upper + 1:
            raise InvalidArgumentError(f"step {k}: {upper} does not descend to {lower} with {m} halvings")


@dataclass(frozen=True)
class DescentTrace:
    """
    Odds x_n ... x_0 of consecutive descending operations and the halving counts between them.

    `resolved` is False when the descent stopped on its step limit before reaching 1.
    """
    odds: Tuple[int, ...]
    halvings: Tuple[int, ...] = ()
    resolved: bool = True

    def __post_init__(self):
        object.__setattr__(self, "odds", tuple(self.odds))
        object.__setattr__(self, "halvings", tuple(self.halvings))
        if not self.odds:
            raise InvalidArgumentError("a descent trace holds at least one odd")
        if len(self.halvings) != len(self.odds) - 1:
            raise InvalidArgumentError("a descent trace needs exactly one halving count per step")
        _require_links(self.odds, self.halvings, upward=False)

    @property
    def start(self):
        return self.odds[0]

    @property
    def end(self):
        return self.odds[-1]

    @property
    def steps(self):
        return len(self.halvings)

    @property
    def total_halvings(self):
        return sum(self.halvings)

    @property
    def peak(self):
        """Largest value of the full trajectory, evens included."""
        return max([self.start] + [3 * x + 1 for x in self.odds[:-1]])


@dataclass(frozen=True)
class AscentSchedule:
    """Doubling counts m_0 ... m_{n-1} of an ascending sequence."""
    m: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))
        for k, count in enumerate(self.m):
            if isinstance(count, bool) or not isinstance(count, int) or count < 1:
                raise InvalidArgumentError(f"schedule entry {k} must be an integer >= 1, got {count!r}")

    def __len__(self):
        return len(self.m)

    def __iter__(self):
        return iter(self.m)

    def __getitem__(self, k):
        return self.m[k]


@dataclass(frozen=True)
class AscentTrace:
    """Odds x_0 ... x_n of consecutive ascending operations driven by a schedule."""
    odds: Tuple[int, ...]
    schedule: AscentSchedule = field(default_factory=AscentSchedule)

    def __post_init__(self):
        object.__setattr__(self, "odds", tuple(self.odds))
        if not isinstance(self.schedule, AscentSchedule):
            object.__setattr__(self, "schedule", AscentSchedule(self.schedule))
        if len(self.odds) != len(self.schedule) + 1:
            raise InvalidArgumentError("an ascent trace needs exactly one doubling count per step")
        _require_links(self.odds, self.schedule.m, upward=True)

    @property
    def seed(self):
        return self.odds[0]

    @property
    def n(self):
        return len(self.schedule)

    @property
    def prefix_sums(self):
        """b_0 ... b_n with b_k the doublings spent reaching x_k."""
        return tuple(accumulate(self.schedule.m, initial=0))


def reverse_trace(trace):
    """Convert a descent trace into the ascent over the same odds, or back."""
    if isinstance(trace, DescentTrace):
        return AscentTrace(odds=trace.odds[::-1], schedule=AscentSchedule(trace.halvings[::-1]))
    if isinstance(trace, AscentTrace):
        return DescentTrace(odds=trace.odds[::-1], halvings=trace.schedule.m[::-1], resolved=trace.seed == 1)
    raise InvalidArgumentError(f"not a trace: {type(trace).__name__}")


def descend_to_origin(x, step_limit):
    """
    Iterate the descending operation from x until 1 or until step_limit steps.

    Args:
        x (int): positive odd start x_n
        step_limit (int): maximum number of descending operations, at least 1

    Returns:
        DescentTrace: resolved=False when the limit was hit first
    """
    require_pos_odd(x)
    if step_limit < 1:
        raise InvalidArgumentError("step_limit must be at least 1")
    odds, halvings = [x], []
    current = x
    while current != 1 and len(halvings) < step_limit:
        current, m = descend_once(current)
        odds.append(current)
        halvings.append(m)
    resolved = current == 1
    if not resolved:
        logger.debug("descent of %d unresolved after %d steps", x, step_limit)
    return DescentTrace(odds=odds, halvings=halvings, resolved=resolved)


def repeated_odds(odds):
    """Odds other than 1 that occur more than once, in order of first repeat."""
    seen, repeats = set(), []
    for x in odds:
        if x != 1 and x in seen and x not in repeats:
            repeats.append(x)
        seen.add(x)
    return tuple(repeats)


def ascend_with_schedule(x0, schedule):
    """
    Apply ascending operations from x0 following a doubling schedule.

    Only the last odd of the result may be terminal; running into a
    multiple of 3 earlier raises TerminalReachedError.
    """
    require_pos_odd(x0, "x0")
    if not isinstance(schedule, AscentSchedule):
        schedule = AscentSchedule(schedule)
    if schedule and is_terminal(x0):
        raise TerminalNumberError(f"terminal number, no ascending operation: 3 divides {x0}")
    odds = [x0]
    for k, m in enumerate(schedule):
        current = odds[-1]
        if is_terminal(current):
            raise TerminalReachedError(f"terminal reached mid-schedule at step {k}: 3 divides {current}", step=k)
        if (m % 2 == 0) != (valid_doubling_parity(current) == EVEN):
            raise ParityError(f"parity violation at step {k}: m={m} for {current}", step=k)
        odds.append(ascend_once(current, m))
        logger.debug("ascent step %d: %d -(%d)- %d", k, current, m, odds[-1])
    return AscentTrace(odds=odds, schedule=schedule)


def repunit4(m):
    """Sum of 4^j for j < m, i.e. (4^m - 1)/3; equals ascend_once(1, 2m)."""
    if m < 1:
        raise InvalidArgumentError(f"term count must be at least 1, got {m}")
    return ((1 << (2 * m)) - 1) // 3


def first_generation_closed_form(x0, i):
    """
    Closed form of the i-th first-generation odd above x0.

    For x0 = 6n+1 it is 2^(2i+1)·n + repunit4(i); for x0 = 6n+5 it is
    2^(2i-1)·(2n+1) + repunit4(i).
    """
    require_pos_odd(x0, "x0")
    if i < 1:
        raise InvalidArgumentError(f"index must be at least 1, got {i}")
    n, r = divmod(x0, 6)
    if r == 1:
        return (n << (2 * i + 1)) + repunit4(i)
    if r == 5:
        return ((2 * n + 1) << (2 * i - 1)) + repunit4(i)
    raise TerminalNumberError(f"terminal number, no ascending operation: 3 divides {x0}")


def first_generation(x0, count):
    """
    The first `count` ascents of x0 in increasing doubling count.

    Returns:
        list: (m, x1) pairs
    """
    require_pos_odd(x0, "x0")
    if is_terminal(x0):
        raise TerminalNumberError(f"terminal number, no ascending operation: 3 divides {x0}")
    result = []
    for i in range(1, count + 1):
        m = doubling_for_index(x0, i)
        x1 = ascend_once(x0, m)
        if x1 != first_generation_closed_form(x0, i):
            raise CoherenceError(f"closed form disagrees with ascent of {x0} at m={m}")
        result.append((m, x1))
    return result


def family_one_halving(n, j, k):
    """Member x_k = -1 + 2^(k+1)·3^(n-k)·j of the n-step one-halving descent family."""
    if not 0 <= k <= n:
        raise InvalidArgumentError(f"k must lie in [0, {n}], got {k}")
    if j < 1:
        raise InvalidArgumentError(f"j must be at least 1, got {j}")
    return -1 + (3 ** (n - k) * j << (k + 1))


def family_two_halvings(n, j, k):
    """Member x_k = 1 + 2^(2k+1)·3^(n-k)·j of the n-step two-halving descent family."""
    if not 0 <= k <= n:
        raise InvalidArgumentError(f"k must lie in [0, {n}], got {k}")
    if j < 0:
        raise InvalidArgumentError(f"j must be nonnegative, got {j}")
    return 1 + (3 ** (n - k) * j << (2 * k + 1))


def _verified_descent(odds, expected_halving):
    # each listed step must be a genuine descending operation
    halvings = []
    for x, nxt in zip(odds, odds[1:]):
        r, m = descend_once(x)
        if r != nxt or (expected_halving is not None and m != expected_halving):
            raise CoherenceError(f"{x} does not descend to {nxt} with {expected_halving} halvings")
        halvings.append(m)
    return DescentTrace(odds=odds, halvings=halvings, resolved=odds[-1] == 1)


def family_one_halving_trace(n, j):
    """The full descent x_n -[1]- ... -[1]- x_0 of the one-halving family."""
    odds = [family_one_halving(n, j, k) for k in range(n, -1, -1)]
    return _verified_descent(odds, 1)


def family_two_halvings_trace(n, j):
    """The full descent x_n -[2]- ... -[2]- x_0 of the two-halving family."""
    odds = [family_two_halvings(n, j, k) for k in range(n, -1, -1)]
    return _verified_descent(odds, 2)


def origin_one_halving_sequence(n, h=1):
    """
    Descent x_{n+1}-[1]-...-[1]-x_1-[m0]-1 reaching the origin in one final step.

    m0 = 3^n·(2h-1) + 1 and x_1 = (2^m0 - 1)/3, which is -1 modulo 2·3^n,
    so the one-halving family with n steps ends exactly at x_1.
    """
    if n < 1 or h < 1:
        raise InvalidArgumentError("n and h must both be at least 1")
    m0 = 3 ** n * (2 * h - 1) + 1
    x1 = ascend_once(1, m0)
    j, rem = divmod(x1 + 1, 2 * 3 ** n)
    if rem:
        raise CoherenceError(f"(2^{m0}-1)/3 is not -1 modulo 2·3^{n}")
    odds = [family_one_halving(n, j, k) for k in range(n, -1, -1)] + [1]
    trace = _verified_descent(odds, None)
    if trace.halvings != (1,) * n + (m0,):
        raise CoherenceError(f"unexpected halving pattern {trace.halvings}")
    return trace


def origin_two_halvings_sequence(n, h=1):
    """
    Descent x_{n+1}-[2]-...-[2]-x_1-[m0]-1 reaching the origin in one final step.

    m0 = 2·(3^n·h + 1) and x_1 = (4^(3^n·h+1) - 1)/3, which is 1 modulo 2·3^n.
    """
    if n < 1 or h < 1:
        raise InvalidArgumentError("n and h must both be at least 1")
    m0 = 2 * (3 ** n * h + 1)
    x1 = repunit4(m0 // 2)
    j, rem = divmod(x1 - 1, 2 * 3 ** n)
    if rem:
        raise CoherenceError(f"repunit4({m0 // 2}) is not 1 modulo 2·3^{n}")
    odds = [family_two_halvings(n, j, k) for k in range(n, -1, -1)] + [1]
    trace = _verified_descent(odds, None)
    if trace.halvings != (2,) * n + (m0,):
        raise CoherenceError(f"unexpected halving pattern {trace.halvings}")
    return trace


@dataclass(frozen=True)
class TreeNode:
    """An odd of the reverse tree; `doubling` is the m that produced it from its parent."""
    value: int
    generation: int
    doubling: Optional[int] = None
    children: Tuple["TreeNode", ...] = ()

    @property
    def terminal(self):
        return is_terminal(self.value)


@dataclass(frozen=True)
class AscentTree:
    root: TreeNode
    generations: int
    children_per_node: int
    per_generation_counts: Tuple[int, ...]

    @property
    def node_count(self):
        return sum(self.per_generation_counts)

    def nodes(self):
        """Depth-first walk, children in increasing doubling count."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def generation(self, g):
        return [node for node in self.nodes() if node.generation == g]


def _expand(root, generations, children_per_node):
    # levels[g] holds (value, doubling, index of the parent in levels[g-1])
    levels = [[(root, None, None)]]
    for _ in range(generations):
        levels.append([
            (child, m, i)
            for i, (value, _, _) in enumerate(levels[-1])
            if not is_terminal(value)
            for m, child in first_generation(value, children_per_node)
        ])
    return levels


def _assemble(levels):
    # bottom-up, so no recursion on deep narrow trees
    built = []
    for g in range(len(levels) - 1, -1, -1):
        children = [[] for _ in levels[g]]
        for parent, node in built:
            children[parent].append(node)
        built = [
            (parent, TreeNode(value=value, generation=g, doubling=doubling, children=tuple(children[i])))
            for i, (value, doubling, parent) in enumerate(levels[g])
        ]
    return built[0][1]


def enumerate_tree(root, generations, children_per_node):
    """
    Breadth-limited reverse tree of ascents from root.

    Every non-terminal node expands to its first `children_per_node` ascents;
    terminal nodes are leaves.

    Args:
        root (int): positive odd, not a multiple of 3 unless generations is 0
        generations (int): depth of the expansion
        children_per_node (int): cap on the ascents taken from each node

    Returns:
        AscentTree
    """
    require_pos_odd(root, "root")
    if generations < 0:
        raise InvalidArgumentError(f"generations must be nonnegative, got {generations}")
    if children_per_node < 1:
        raise InvalidArgumentError(f"children_per_node must be at least 1, got {children_per_node}")
    if generations > 0 and is_terminal(root):
        raise TerminalNumberError(f"terminal root: 3 divides {root}")
    levels = _expand(root, generations, children_per_node)
    return AscentTree(
        root=_assemble(levels),
        generations=generations,
        children_per_node=children_per_node,
        per_generation_counts=tuple(len(level) for level in levels),
    )
