"""Clauses and the indexed, immutable clause database."""

import hashlib
from fractions import Fraction

from ..builtins import BUILTINS
from ..errors import ParseError
from ..terms import Local, PStruct, Struct, Var, build, deref, functor_key
from .parser import RESERVED, parse_sentences
from .printer import clause_text


def _compile(t, slots):
    t = deref(t)
    if type(t) is Var:
        loc = slots.get(t)
        if loc is None:
            loc = slots[t] = Local(len(slots), t.name)
        return loc
    if type(t) is Struct and t.args:
        args = [_compile(a, slots) for a in t.args]
        if any(type(a) in (Local, PStruct) for a in args):
            return PStruct(t.name, args, t.key)
        return Struct(t.name, args, t.key)
    return t


class Clause:
    """``head <- body`` compiled to patterns over clause-local slots.

    Slots are numbered by first occurrence (head first), so two
    alpha-equivalent clauses compile to equal patterns.
    """

    __slots__ = ("head", "body", "nvars", "weight", "key", "hargs", "line")

    def __init__(self, head, body, weight=1, line=None):
        slots = {}
        self.head = _compile(head, slots)
        self.body = _compile(body, slots)
        self.nvars = len(slots)
        self.weight = Fraction(weight)
        self.key = self.head.key
        self.hargs = self.head.args
        self.line = line

    @property
    def name(self):
        return self.key[0]

    @property
    def arity(self):
        return self.key[1]

    def rename_apart(self):
        """Fresh ``(head, body)`` terms sharing no variable with any other use."""
        env = [None] * self.nvars
        return build(self.head, env), build(self.body, env)

    def __eq__(self, other):
        return (
            isinstance(other, Clause)
            and self.head == other.head
            and self.body == other.body
            and self.weight == other.weight
        )

    def __hash__(self):
        return hash((self.head, self.body))

    def text(self, fact_body=None):
        h, b = self.rename_apart()
        return clause_text(h, b, self.weight, ids=False, fact_body=fact_body)

    def __repr__(self):
        return f"Clause({self.text()})"


class Program:
    """Clauses indexed by ``(name, arity)`` in source order.

    ``dialect`` is ``linear`` (facts have body ``one``) or ``vanilla`` (facts
    have body ``true``). Named contexts and property declarations read from
    the same file ride along but take no part in equality.
    """

    overlays = ()

    def __init__(self, clauses=(), dialect="linear", name=None, contexts=None, props=None):
        self.dialect = dialect
        self.name = name
        self.preds = {}
        self.contexts = dict(contexts or {})
        self.props = list(props or [])
        for c in clauses:
            self._add(c)
        self.builtins = frozenset(BUILTINS)

    def _add(self, c):
        if c.key in BUILTINS:
            raise ParseError(f"built-in {c.name}/{c.arity} cannot have clauses", c.line)
        if c.key in RESERVED:
            raise ParseError(f"reserved connective {c.name}/{c.arity} cannot head a clause", c.line)
        for k in self.preds:
            if k[0] == c.name and k[1] != c.arity:
                raise ParseError(
                    f"arity clash: {c.name}/{c.arity} vs {k[0]}/{k[1]}", c.line
                )
        self.preds.setdefault(c.key, []).append(c)

    @property
    def fact_body(self):
        return functor_key("true" if self.dialect == "vanilla" else "one", 0)

    def clauses_for(self, key):
        return self.preds.get(key, ())

    def clauses(self):
        for cs in self.preds.values():
            yield from cs

    def __iter__(self):
        return self.clauses()

    def __len__(self):
        return sum(len(cs) for cs in self.preds.values())

    def __contains__(self, key):
        return key in self.preds

    def __eq__(self, other):
        return (
            isinstance(other, Program)
            and self.dialect == other.dialect
            and {k: v for k, v in self.preds.items() if v}
            == {k: v for k, v in other.preds.items() if v}
        )

    def copy(self, name=None):
        p = Program(dialect=self.dialect, name=name or self.name,
                    contexts=self.contexts, props=self.props)
        p.preds = {k: list(v) for k, v in self.preds.items()}
        p.overlays = self.overlays
        return p

    def extend(self, other):
        """New program with ``other``'s clauses appended (other's directives too)."""
        p = self.copy()
        for c in other.clauses():
            p._add(c)
        p.contexts.update(other.contexts)
        p.props.extend(other.props)
        return p

    def signatures(self):
        return sorted(f"{n}/{a}" for (n, a), cs in self.preds.items() if cs)

    def fingerprint(self):
        """Short digest of the predicate signatures (not of the clause bodies)."""
        return hashlib.sha256(" ".join(self.signatures()).encode()).hexdigest()[:16]

    def text(self):
        return "\n".join(c.text(self.fact_body) for c in self.clauses()) + "\n"


def parse_clause(text, dialect="linear"):
    sents = parse_sentences(text, dialect=dialect)
    if len(sents) != 1 or sents[0][0] != "clause":
        raise ParseError(f"expected exactly one clause: {text!r}")
    cs = sents[0][1]
    return Clause(cs.head, cs.body, cs.weight, cs.line)


def parse_program(text, source=None, dialect="linear", name=None):
    """Parse a whole specification file into a ``Program``."""
    clauses = []
    contexts = {}
    props = []
    for sent in parse_sentences(text, source, dialect):
        if sent[0] == "clause":
            cs = sent[1]
            clauses.append(Clause(cs.head, cs.body, cs.weight, cs.line))
        elif sent[0] == "context":
            contexts[sent[1]] = sent[2]
        else:
            props.append(sent[1])
    try:
        return Program(clauses, dialect, name or source, contexts, props)
    except ParseError as e:
        raise ParseError(e.message, e.line, None, source) from None
