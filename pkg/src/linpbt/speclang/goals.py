"""Reading terms as goals, and the ordered resource context."""

from dataclasses import dataclass, replace

from ..errors import Floundering, IllFormedGoal
from ..terms import Struct, Var, deref, functor_key
from .printer import pretty

K_TENSOR = functor_key("x", 2)
K_WITH = functor_key("&", 2)
K_LIMP = functor_key("->", 2)
K_BANG = functor_key("bang", 1)
K_ONE = functor_key("one", 0)
K_ERASE = functor_key("erase", 0)
K_CONJ = functor_key(",", 2)
K_TRUE = functor_key("true", 0)

CONNECTIVE_NAMES = {"x": 2, "&": 2, "->": 2, "bang": 1, "one": 0, "erase": 0}


@dataclass(frozen=True)
class Atom:
    term: object


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Erase:
    pass


@dataclass(frozen=True)
class Limp:
    antecedent: object
    body: object


@dataclass(frozen=True)
class Bang:
    body: object


@dataclass(frozen=True)
class Tensor:
    left: object
    right: object


@dataclass(frozen=True)
class With:
    left: object
    right: object


def _atomic(t):
    return type(t) is Struct and t.name not in CONNECTIVE_NAMES


def view_goal(t, store=None):
    """Classify a dereferenced term as a linear goal.

    Raises ``Floundering`` for an unbound variable and ``IllFormedGoal`` for
    integers, reserved functors at the wrong arity, or a non-atomic ``->``
    antecedent.
    """
    t = deref(t)
    if type(t) is Var:
        raise Floundering(f"unbound goal variable {pretty(t)}")
    if type(t) is not Struct:
        raise IllFormedGoal(f"{t!r} is not a goal")
    k = t.key
    if k is K_TENSOR:
        return Tensor(t.args[0], t.args[1])
    if k is K_WITH:
        return With(t.args[0], t.args[1])
    if k is K_LIMP:
        a = deref(t.args[0])
        if not _atomic(a):
            raise IllFormedGoal(f"non-atomic antecedent in {pretty(t)}")
        return Limp(a, t.args[1])
    if k is K_BANG:
        return Bang(t.args[0])
    if k is K_ONE:
        return One()
    if k is K_ERASE:
        return Erase()
    if t.name in CONNECTIVE_NAMES:
        raise IllFormedGoal(f"connective {t.name} used with arity {len(t.args)}")
    return Atom(t)


@dataclass(frozen=True)
class Slot:
    assumption: object
    persistent: bool = False
    consumed: bool = False

    def available(self):
        return not self.consumed


class ResourceContext:
    """Ordered assumption slots; outputs differ from inputs only in state."""

    __slots__ = ("slots",)

    def __init__(self, slots=()):
        self.slots = tuple(
            s if isinstance(s, Slot) else Slot(s[0], bool(s[1])) for s in slots
        )

    @classmethod
    def of(cls, linear=(), persistent=()):
        return cls([Slot(a, True) for a in persistent] + [Slot(a) for a in linear])

    def __len__(self):
        return len(self.slots)

    def __iter__(self):
        return iter(self.slots)

    def __getitem__(self, i):
        return self.slots[i]

    def __eq__(self, other):
        return isinstance(other, ResourceContext) and self.slots == other.slots

    def __hash__(self):
        return hash(self.slots)

    def linear_indices(self):
        return [i for i, s in enumerate(self.slots) if not s.persistent]

    def consumed_indices(self):
        return [i for i, s in enumerate(self.slots) if s.consumed]

    def with_consumed(self, indices):
        idx = set(indices)
        for i in idx:
            if self.slots[i].persistent:
                raise ValueError("persistent slots cannot be consumed")
        return ResourceContext(
            replace(s, consumed=s.consumed or i in idx) for i, s in enumerate(self.slots)
        )

    def all_linear_consumed(self):
        return all(s.consumed for s in self.slots if not s.persistent)

    def fingerprint(self, ids=False):
        parts = []
        for s in self.slots:
            if s.consumed:
                parts.append("□")
            elif s.persistent:
                parts.append("!" + pretty(s.assumption, ids=ids))
            else:
                parts.append(pretty(s.assumption, ids=ids))
        return "[" + ", ".join(parts) + "]"

    def __repr__(self):
        return f"ResourceContext{self.fingerprint(ids=True)}"
