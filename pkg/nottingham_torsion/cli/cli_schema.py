from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Optional

from nottingham_torsion.equivalence import CountMethod
from nottingham_torsion.utils.config import DEFAULT_BUDGET, DEFAULT_JOBS, DEFAULT_SEED, DEFAULT_TRIALS
from nottingham_torsion.utils.errors import UsageError
from nottingham_torsion.utils.util import validate_str_value


class Subcommand(Enum):
    REDUCE = "reduce"
    CLASSIFY = "classify"
    BOUND = "bound"
    TABLES = "tables"
    POWER_CONJ = "power-conj"
    VERIFY = "verify"


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class ExitStatus(IntEnum):
    SUCCESS = 0
    VERIFICATION_FAILED = 1
    USAGE_ERROR = 2
    BUDGET_REFUSED = 3


_REQUIRED = {
    Subcommand.REDUCE: ("prime", "character"),
    Subcommand.CLASSIFY: ("prime", "l", "m"),
    Subcommand.BOUND: ("prime", "l", "m"),
    Subcommand.TABLES: ("prime", "l", "m"),
    Subcommand.POWER_CONJ: ("prime", "l", "m", "n"),
    Subcommand.VERIFY: (),
}


@dataclass(frozen=True)
class CommandRequest:
    """
    One CLI invocation, independent of click.

    For `tables`, l and m are the largest first and second breaks of the grid.
    """
    subcommand: Subcommand
    prime: Optional[int] = None
    character: Optional[str] = None
    l: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None
    budget: int = DEFAULT_BUDGET
    output_format: OutputFormat = OutputFormat.TEXT
    seed: int = DEFAULT_SEED
    jobs: int = DEFAULT_JOBS
    trials: int = DEFAULT_TRIALS
    method: CountMethod = CountMethod.ORACLE_PARTITION

    def __post_init__(self):
        object.__setattr__(self, "subcommand", validate_str_value(Subcommand, self.subcommand))
        object.__setattr__(self, "output_format", validate_str_value(OutputFormat, self.output_format))
        object.__setattr__(self, "method", validate_str_value(CountMethod, self.method))

    def validate(self) -> None:
        """
        Raises:
            UsageError: If an argument the subcommand needs is missing or out of range.
        """
        missing = [name for name in _REQUIRED[self.subcommand] if getattr(self, name) is None]
        if missing:
            flags = ", ".join("--char" if name == "character" else "--p" if name == "prime" else f"--{name}"
                              for name in missing)
            raise UsageError(f"{self.subcommand.value} needs {flags}")
        if self.budget < 1 or self.jobs < 1 or self.trials < 1:
            raise UsageError("--budget, --jobs and --trials must be positive")
