"""Proof certificates and their experts.

Four formats drive the search: ``Height`` bounds nesting of unfolds,
``Size`` bounds their total count (the allowance is threaded left to right
through tensors and handed back as a residual), ``Random`` permutes each
definition by clause weight under a depth guard, and ``Pair`` runs two
certificates in lock-step.

The kernel talks to a certificate through a handful of methods:

- ``unfold(clauses)``: admitted ``(clause, continuation)`` pairs, in order;
- ``tensor_left()`` / ``tensor_right(residual_of_left)``;
- ``with_join(r1, r2)``: residual after both additive branches, or ``None``;
- ``after_unfold(residual_of_body)``: residual of the unfolded atom.

Resource management never goes through the experts.
"""

import random as _random
import re
from dataclasses import dataclass

from .errors import ConfigurationError

DEFAULT_GUARD = 20


class Certificate:
    __slots__ = ()
    threaded = False

    def tensor_left(self):
        return self

    def tensor_right(self, r1):
        return self

    def with_join(self, r1, r2):
        return self

    def after_unfold(self, r):
        return self

    def axiom(self):
        return self

    def deterministic(self):
        return self

    def fresh(self):
        """Same certificate with any random state rewound to its seed."""
        return self

    def __str__(self):
        return self.literal()

    def __repr__(self):
        return f"<{self.literal()}>"


class Height(Certificate):
    __slots__ = ("n",)
    policy = "copy"

    def __init__(self, n):
        if n < 0:
            raise ConfigurationError("height must be >= 0")
        self.n = n

    def unfold(self, clauses):
        if self.n <= 0:
            return ()
        nxt = Height(self.n - 1)
        return [(c, nxt) for c in clauses]

    def __eq__(self, other):
        return type(other) is Height and other.n == self.n

    def __hash__(self):
        return hash(("height", self.n))

    def literal(self):
        return f"height:{self.n}"


class Size(Certificate):
    """Unfold allowance; the residual after a subproof is what is left."""

    __slots__ = ("n",)
    threaded = True
    policy = "thread"

    def __init__(self, n):
        if n < 0:
            raise ConfigurationError("size must be >= 0")
        self.n = n

    def unfold(self, clauses):
        if self.n <= 0:
            return ()
        nxt = Size(self.n - 1)
        return [(c, nxt) for c in clauses]

    def tensor_right(self, r1):
        return r1

    def with_join(self, r1, r2):
        # both branches start from the full allowance and must agree on what is left
        return r1 if r1.n == r2.n else None

    def after_unfold(self, r):
        return r

    def __eq__(self, other):
        return type(other) is Size and other.n == self.n

    def __hash__(self):
        return hash(("size", self.n))

    def literal(self):
        return f"size:{self.n}"


class Random(Certificate):
    """Weighted random backchaining.

    The generator is shared by every continuation of one search and is not
    rewound on backtracking, so a run is reproducible from the seed alone.
    """

    __slots__ = ("seed", "guard", "rng")
    policy = "copy"

    def __init__(self, seed=0, guard=DEFAULT_GUARD, rng=None):
        if guard < 0:
            raise ConfigurationError("guard must be >= 0")
        self.seed = seed
        self.guard = guard
        self.rng = rng if rng is not None else _random.Random(seed)

    def permutation(self, clauses):
        pool = list(clauses)
        weights = [float(c.weight) for c in pool]
        out = []
        rng = self.rng
        while pool:
            total = sum(weights)
            x = rng.random() * total
            i = 0
            acc = weights[0]
            while acc <= x and i < len(pool) - 1:
                i += 1
                acc += weights[i]
            out.append(pool.pop(i))
            weights.pop(i)
        return out

    def unfold(self, clauses):
        if self.guard <= 0 or not clauses:
            return ()
        nxt = Random(self.seed, self.guard - 1, self.rng)
        return [(c, nxt) for c in self.permutation(clauses)]

    def deterministic(self):
        return Height(self.guard)

    def fresh(self):
        return Random(self.seed, self.guard)

    def __eq__(self, other):
        return (
            type(other) is Random
            and other.seed == self.seed
            and other.guard == self.guard
        )

    def __hash__(self):
        return hash(("random", self.seed, self.guard))

    def literal(self):
        return f"random:seed={self.seed},guard={self.guard}"


class Pair(Certificate):
    __slots__ = ("left", "right", "threaded")

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.threaded = left.threaded or right.threaded

    @property
    def policy(self):
        return (self.left.policy, self.right.policy)

    def unfold(self, clauses):
        ls = self.left.unfold(clauses)
        if not ls:
            return ()
        rs = {id(c): k for c, k in self.right.unfold(clauses)}
        return [(c, Pair(k, rs[id(c)])) for c, k in ls if id(c) in rs]

    def tensor_left(self):
        return Pair(self.left.tensor_left(), self.right.tensor_left())

    def tensor_right(self, r1):
        return Pair(self.left.tensor_right(r1.left), self.right.tensor_right(r1.right))

    def with_join(self, r1, r2):
        a = self.left.with_join(r1.left, r2.left)
        if a is None:
            return None
        b = self.right.with_join(r1.right, r2.right)
        if b is None:
            return None
        return Pair(a, b)

    def after_unfold(self, r):
        return Pair(self.left.after_unfold(r.left), self.right.after_unfold(r.right))

    def axiom(self):
        return Pair(self.left.axiom(), self.right.axiom())

    def deterministic(self):
        return Pair(self.left.deterministic(), self.right.deterministic())

    def fresh(self):
        return Pair(self.left.fresh(), self.right.fresh())

    def __eq__(self, other):
        return type(other) is Pair and other.left == self.left and other.right == self.right

    def __hash__(self):
        return hash(("pair", self.left, self.right))

    def literal(self):
        return f"pair({self.left.literal()},{self.right.literal()})"


RULES = ("with", "one", "tensor", "erase", "lolli", "bang", "init", "bang-init", "unfold")


@dataclass(frozen=True)
class ExpertOutcome:
    """What an expert hands to the premises of one rule.

    ``premises`` are the certificates known before any premise runs. For
    tensor the right premise is computed from the left residual according
    to ``policy`` ("copy" or "thread", a pair of policies for ``Pair``).
    """

    rule: str
    accepted: bool
    premises: tuple = ()
    residual: object = None
    policy: object = None


def expert(rule, cert):
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    if rule in ("one", "erase", "init", "bang-init"):
        return ExpertOutcome(rule, True, (), cert.axiom())
    if rule == "with":
        return ExpertOutcome(rule, True, (cert, cert), policy=cert.policy)
    if rule == "tensor":
        left = cert.tensor_left()
        return ExpertOutcome(rule, True, (left, cert.tensor_right(left)), policy=cert.policy)
    if rule in ("lolli", "bang"):
        return ExpertOutcome(rule, True, (cert,))
    # unfold: probe with a single stand-in clause of weight 1
    nxt = cert.unfold([_PROBE])
    if not nxt:
        return ExpertOutcome(rule, False)
    return ExpertOutcome(rule, True, (nxt[0][1],))


class _Probe:
    weight = 1


_PROBE = _Probe()


def unfold_expert(cert, atom, clauses):
    """Admitted ``(clause, continuation)`` pairs for ``atom`` under ``cert``."""
    return list(cert.unfold(list(clauses)))


# literals: height:4  size:7  random:seed=42,guard=20  pair(A,B)

_LIT = re.compile(r"\s*(?:(?P<name>[a-z]+)|(?P<int>-?\d+)|(?P<p>[():,=]))")


def parse_certificate(text, seed=None):
    """Certificate from its CLI literal. ``seed`` overrides random seeds."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _LIT.match(text, pos)
        if m is None or m.end() == pos:
            raise ConfigurationError(f"bad certificate literal {text!r}")
        toks.append(m.group().strip())
        pos = m.end()
    toks.append("")
    i = 0

    def take(expected=None):
        nonlocal i
        t = toks[i]
        if expected is not None and t != expected:
            raise ConfigurationError(
                f"bad certificate literal {text!r}: expected {expected!r}, found {t!r}"
            )
        i += 1
        return t

    def number():
        t = take()
        try:
            return int(t)
        except ValueError:
            raise ConfigurationError(f"bad certificate literal {text!r}: expected a number") from None

    def cert():
        name = take()
        if name == "pair":
            take("(")
            a = cert()
            take(",")
            b = cert()
            take(")")
            return Pair(a, b)
        if name in ("height", "size"):
            take(":")
            n = number()
            return Height(n) if name == "height" else Size(n)
        if name == "random":
            opts = {"seed": 0, "guard": DEFAULT_GUARD}
            if toks[i] == ":":
                take(":")
                while True:
                    key = take()
                    if key not in opts:
                        raise ConfigurationError(f"unknown random option {key!r}")
                    take("=")
                    opts[key] = number()
                    if toks[i] == "," and toks[i + 2] == "=":
                        take(",")
                        continue
                    break
            if seed is not None:
                opts["seed"] = seed
            return Random(opts["seed"], opts["guard"])
        raise ConfigurationError(f"unknown certificate format {name!r} in {text!r}")

    out = cert()
    if toks[i] != "":
        raise ConfigurationError(f"trailing input in certificate literal {text!r}")
    return out
