# config.py

import os
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping

from collatz_odds.errors import InvalidArgumentError

# Get the base directory where the package is located
base_dir = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.path.join(os.path.dirname(base_dir), "data")

DEFAULT_STEP_LIMIT = 1000
DEFAULT_THREADS = 1
DEFAULT_FORMAT = "text"
DEFAULT_MAX_N = 3

# Significant digits used when rendering exact rationals in reports
RECORD_DIGITS = 10

# Odds handed to one range-verification worker at a time
RANGE_CHUNK_SIZE = 1 << 14

# Seed for the sampled checks of the verification suites
SUITE_SEED = 1937

COMMANDS = ("descend", "ascend", "tree", "pattern", "primitive", "cycles", "verify", "estimate", "range")
OUTPUT_FORMATS = ("text", "records", "table")
SUITES = ("golden", "tables", "core", "sequences", "patterns", "theorems", "all")


@dataclass(frozen=True)
class RunConfig:
    """
    One command-line invocation after parsing.

    Attributes:
        command: one of COMMANDS
        parameters: command-specific values (inputs, schedules, bounds)
        output_format: one of OUTPUT_FORMATS
        step_limit: descent step bound, at least 1
        thread_count: worker count for the parallel commands, at least 1
    """
    command: str
    parameters: Mapping[str, Any] = field(default_factory=dict)
    output_format: str = DEFAULT_FORMAT
    step_limit: int = DEFAULT_STEP_LIMIT
    thread_count: int = DEFAULT_THREADS

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidArgumentError(f"unknown command {self.command!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise InvalidArgumentError(f"unknown output format {self.output_format!r}")
        if self.step_limit < 1:
            raise InvalidArgumentError("step_limit must be at least 1")
        if self.thread_count < 1:
            raise InvalidArgumentError("thread_count must be at least 1")
        object.__setattr__(self, "parameters", MappingProxyType(dict(self.parameters)))
