"""Concrete syntax for specification files.

A file is a sequence of ``.``-terminated sentences:

    Head <- Body.            clause
    Head <- Body # 3.        clause with weight 3 (also ``# 3/2``)
    Head.                    fact, body ``one`` (``true`` for vanilla programs)
    context NAME: a, bang b.           named initial context
    prop NAME: gen G @ CERT; pre G in NAME; conclude G using vanilla.

Goal operators from tightest to loosest: primary terms, ``bang``, ``x``
(left), ``&`` (left), ``->`` (right), and ``,`` (vanilla conjunction, right).
``x`` is only an operator in infix position, so a constant named ``x`` is
still an ordinary symbol. Lists use ``[a, b | T]`` and read as cons/nil.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import ParseError
from ..terms import NIL, Struct, Var

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<atom>[a-z][A-Za-z0-9_]*)
  | (?P<qatom>'(?:[^'\\\n]|\\.)*')
  | (?P<int>[0-9]+)
  | (?P<punct><-|->|[()\[\]|,.;&#@:=/-])
    """,
    re.VERBOSE,
)

# functors that are goal connectives and may never head a clause
RESERVED = {
    ("x", 2), ("&", 2), ("->", 2), ("bang", 1), ("one", 0), ("erase", 0),
    (",", 2), ("true", 0),
}

STAGE_KINDS = ("gen", "pre", "conclude", "forbid")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


@dataclass
class ClauseSource:
    head: object
    body: object
    weight: Fraction
    line: int


@dataclass
class StageDecl:
    kind: str
    goal: object
    cert: str = None
    context: str = None
    engine: str = None


@dataclass
class PropDecl:
    name: str
    stages: list
    variables: dict = field(default_factory=dict)


def tokenize(text, source=None):
    out = []
    pos = 0
    line = 1
    line_start = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source
            )
        kind = m.lastgroup
        tok = m.group()
        if kind != "ws":
            out.append(Token(kind, tok, line, pos - line_start + 1))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = m.start() + tok.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


def _unquote(text):
    return re.sub(r"\\(.)", r"\1", text[1:-1])


class Parser:
    def __init__(self, text, source=None, dialect="linear"):
        self.toks = tokenize(text, source)
        self.i = 0
        self.source = source
        self.dialect = dialect
        self.varmap = {}

    # token helpers

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col, self.source)

    def at(self, text, kind="punct"):
        t = self.peek()
        return t.kind == kind and t.text == text

    def expect(self, text, kind="punct"):
        if not self.at(text, kind):
            t = self.peek()
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.next()

    # terms

    def variable(self, name):
        if name == "_":
            return Var("_")
        v = self.varmap.get(name)
        if v is None:
            v = self.varmap[name] = Var(name)
        return v

    def term(self, level=5):
        if level == 5:
            left = self.term(4)
            if self.at(","):
                tok = self.next()
                if self.dialect != "vanilla":
                    self.error("',' is not a linear connective; use 'x'", tok)
                return Struct(",", (left, self.term(5)))
            return left
        if level == 4:
            tok = self.peek()
            left = self.term(3)
            if self.at("->"):
                self.next()
                _check_antecedent(self, left, tok)
                return Struct("->", (left, self.term(4)))
            return left
        if level == 3:
            left = self.term(2)
            while self.at("&"):
                self.next()
                left = Struct("&", (left, self.term(2)))
            return left
        if level == 2:
            left = self.term(1)
            while self.at("x", "atom"):
                self.next()
                left = Struct("x", (left, self.term(1)))
            return left
        if level == 1:
            nxt = self.peek(1)
            if self.at("bang", "atom") and nxt.text != "(" and not _is_follow(nxt):
                self.next()
                return Struct("bang", (self.term(1),))
            return self.primary()
        raise AssertionError(level)

    def primary(self):
        t = self.next()
        if t.kind == "var":
            return self.variable(t.text)
        if t.kind == "int":
            return int(t.text)
        if t.kind == "punct" and t.text == "-" and self.peek().kind == "int":
            return -int(self.next().text)
        if t.kind in ("atom", "qatom"):
            name = t.text if t.kind == "atom" else _unquote(t.text)
            if self.at("("):
                self.next()
                args = [self.term(4)]
                while self.at(","):
                    self.next()
                    args.append(self.term(4))
                self.expect(")")
                return Struct(name, tuple(args))
            return Struct(name)
        if t.kind == "punct" and t.text == "(":
            inner = self.term(5)
            self.expect(")")
            return inner
        if t.kind == "punct" and t.text == "[":
            return self.list_tail()
        self.error(f"unexpected {t.text or 'end of input'!r}", t)

    def list_tail(self):
        if self.at("]"):
            self.next()
            return NIL
        items = [self.term(4)]
        while self.at(","):
            self.next()
            items.append(self.term(4))
        tail = NIL
        if self.at("|"):
            self.next()
            tail = self.term(4)
        self.expect("]")
        for x in reversed(items):
            tail = Struct("cons", (x, tail))
        return tail

    # sentences

    def weight(self):
        tok = self.next()
        if tok.kind != "int":
            self.error("weight must be a positive integer or fraction", tok)
        num = int(tok.text)
        den = 1
        if self.at("/"):
            self.next()
            d = self.next()
            if d.kind != "int":
                self.error("bad weight denominator", d)
            den = int(d.text)
        if num <= 0 or den <= 0:
            self.error("weight must be positive", tok)
        return Fraction(num, den)

    def clause(self):
        self.varmap = {}
        start = self.peek()
        head = self.primary()
        if not isinstance(head, Struct):
            self.error("clause head must be an atom", start)
        if (head.name, len(head.args)) in RESERVED:
            self.error(f"reserved connective {head.name}/{len(head.args)} cannot head a clause", start)
        if self.at("<-"):
            self.next()
            body = self.term(5)
        else:
            body = Struct("true" if self.dialect == "vanilla" else "one")
        weight = Fraction(1)
        if self.at("#"):
            self.next()
            weight = self.weight()
        self.expect(".")
        return ClauseSource(head, body, weight, start.line)

    def context_items(self):
        items = []
        if self.at("."):
            return items
        while True:
            t = self.term(4)
            persistent = False
            if isinstance(t, Struct) and t.name == "bang" and len(t.args) == 1:
                t = t.args[0]
                persistent = True
            if not isinstance(t, Struct) or (t.name, len(t.args)) in RESERVED:
                self.error("context entries must be atoms")
            items.append((t, persistent))
            if not self.at(","):
                return items
            self.next()

    def cert_text(self):
        # raw token run up to the next stage keyword or terminator
        parts = []
        depth = 0
        while True:
            t = self.peek()
            if t.kind == "eof":
                break
            if depth == 0 and (
                (t.kind == "punct" and t.text in (";", "."))
                or (t.kind == "atom" and t.text in ("in", "using"))
            ):
                break
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                depth -= 1
            parts.append(self.next().text)
        if not parts:
            self.error("missing certificate after '@'")
        return "".join(parts)

    def stage(self):
        kw = self.next()
        if kw.kind != "atom" or kw.text not in STAGE_KINDS:
            self.error(f"expected one of {', '.join(STAGE_KINDS)}", kw)
        goal = self.term(4)
        st = StageDecl(kw.text, goal)
        while True:
            if self.at("@"):
                self.next()
                st.cert = self.cert_text()
            elif self.at("in", "atom"):
                self.next()
                st.context = self.name_token()
            elif self.at("using", "atom"):
                self.next()
                st.engine = self.name_token()
            else:
                return st

    def name_token(self):
        t = self.next()
        if t.kind != "atom":
            self.error("expected a name", t)
        return t.text

    def directive(self, kind):
        self.varmap = {}
        self.next()
        name = self.name_token()
        self.expect(":")
        if kind == "context":
            items = self.context_items()
            self.expect(".")
            return ("context", name, items)
        stages = [self.stage()]
        while self.at(";"):
            self.next()
            stages.append(self.stage())
        self.expect(".")
        return ("prop", PropDecl(name, stages, dict(self.varmap)))

    def sentences(self):
        out = []
        while self.peek().kind != "eof":
            t = self.peek()
            nxt = self.peek(1)
            if t.kind == "atom" and t.text in ("prop", "context") and nxt.kind == "atom" \
                    and self.peek(2).text == ":":
                out.append(self.directive(t.text))
            else:
                out.append(("clause", self.clause()))
        return out


def _is_follow(tok):
    # 'bang' used as a plain constant: followed by something that ends a term
    return tok.kind == "eof" or (tok.kind == "punct" and tok.text in (")", "]", ",", ".", "|", "&", "->", "<-", "#", "@", ";"))


def _check_antecedent(parser, t, tok):
    if isinstance(t, Var) or isinstance(t, int):
        parser.error("'->' needs an atomic antecedent", tok)
    if (t.name, len(t.args)) in RESERVED:
        parser.error("'->' needs an atomic antecedent", tok)


def parse_term(text, varmap=None, dialect="linear"):
    """Parse a single goal or data term; ``varmap`` is shared and updated."""
    p = Parser(text, dialect=dialect)
    if varmap is not None:
        p.varmap = varmap
    t = p.term(5)
    if p.at("."):
        p.next()
    if p.peek().kind != "eof":
        p.error(f"trailing input {p.peek().text!r}")
    return t


def parse_context(text, varmap=None):
    p = Parser(text)
    if varmap is not None:
        p.varmap = varmap
    items = p.context_items()
    if p.at("."):
        p.next()
    if p.peek().kind != "eof":
        p.error(f"trailing input {p.peek().text!r}")
    return items


def parse_sentences(text, source=None, dialect="linear"):
    return Parser(text, source, dialect).sentences()
