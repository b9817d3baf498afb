from .goals import (
    Atom,
    Bang,
    Erase,
    Limp,
    One,
    ResourceContext,
    Slot,
    Tensor,
    With,
    view_goal,
)
from .parser import parse_context, parse_term
from .printer import pretty
from .program import Clause, Program, parse_clause, parse_program

__all__ = [
    "Atom", "Bang", "Clause", "Erase", "Limp", "One", "Program",
    "ResourceContext", "Slot", "Tensor", "With", "parse_clause",
    "parse_context", "parse_program", "parse_term", "pretty", "view_goal",
]
