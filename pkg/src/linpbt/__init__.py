"""Property-based testing for linear logic programs.

Proof search is driven by certificates: the same kernel generates test
data (bounded or random) and checks properties against it.
"""

from .errors import (
    ConfigurationError,
    Floundering,
    IllFormedGoal,
    InstantiationError,
    LinpbtError,
    MutantError,
    ParseError,
    ReplayMismatch,
    StepBudgetExceeded,
    UnsoundNegation,
)
from .fpc import Height, Pair, Random, Size, parse_certificate
from .kernel import prove, solve_closed
from .pbt import Exhaustive, Randomized, replay, run_property
from .speclang.program import parse_program

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError", "Floundering", "IllFormedGoal", "InstantiationError", "LinpbtError",
    "MutantError", "ParseError", "ReplayMismatch", "StepBudgetExceeded", "UnsoundNegation",
    "Height", "Pair", "Random", "Size", "parse_certificate", "prove", "solve_closed",
    "parse_program", "Exhaustive", "Randomized", "replay", "run_property",
]
