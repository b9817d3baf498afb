"""Pure-Python term core: terms, destructive binding with a trail, unification.

This module is the reference backend. ``linpbt._ccore`` is a Cython build of
the same API; ``linpbt.terms`` picks one at import time.

Clause patterns are compiled so that renaming apart never copies the whole
clause: variables become ``Local`` slots into a per-use environment, ground
subterms stay plain ``Struct`` values shared between uses, and only the
non-ground skeleton is a ``PStruct``.
"""

import itertools

BACKEND = "python"

_ids = itertools.count(1)
_keys = {}


def functor_key(name, arity):
    """Interned ``(name, arity)`` pair; identity comparison is valid."""
    k = (name, arity)
    found = _keys.get(k)
    if found is None:
        _keys[k] = found = k
    return found


class Var:
    __slots__ = ("ref", "name", "id")

    def __init__(self, name="_"):
        self.ref = None
        self.name = name
        self.id = next(_ids)

    def __repr__(self):
        return f"{self.name}_{self.id}"


class Struct:
    """Compound term or constant (``args == ()``)."""

    __slots__ = ("name", "args", "key")

    def __init__(self, name, args=(), key=None):
        self.name = name
        self.args = tuple(args)
        self.key = key if key is not None else functor_key(name, len(self.args))

    def __eq__(self, other):
        return (
            type(other) is Struct
            and self.key is other.key
            and self.args == other.args
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.name, self.args))

    def __repr__(self):
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(map(repr, self.args))})"


class Local:
    """Clause-local variable slot used inside compiled patterns."""

    __slots__ = ("index", "name")

    def __init__(self, index, name="_"):
        self.index = index
        self.name = name

    def __eq__(self, other):
        return type(other) is Local and self.index == other.index

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(("local", self.index))

    def __repr__(self):
        return f"#{self.index}"


class PStruct:
    """Non-ground pattern node: at least one ``Local`` occurs below it."""

    __slots__ = ("name", "args", "key")

    def __init__(self, name, args, key=None):
        self.name = name
        self.args = tuple(args)
        self.key = key if key is not None else functor_key(name, len(self.args))

    def __eq__(self, other):
        return (
            type(other) is PStruct
            and self.key is other.key
            and self.args == other.args
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(("p", self.name, self.args))

    def __repr__(self):
        return f"{self.name}({', '.join(map(repr, self.args))})"


def deref(t):
    while type(t) is Var:
        r = t.ref
        if r is None:
            return t
        t = r
    return t


def undo(trail, mark):
    while len(trail) > mark:
        trail.pop().ref = None


def occurs(v, t):
    t = deref(t)
    if t is v:
        return True
    if type(t) is Struct:
        for a in t.args:
            if occurs(v, a):
                return True
    return False


def unify(a, b, trail, occurs_check=True):
    """Unify two terms, trailing every binding.

    Partial bindings are left on the trail when unification fails; callers
    undo to their own mark.
    """
    a = deref(a)
    b = deref(b)
    if a is b:
        return True
    ta = type(a)
    tb = type(b)
    if ta is Var:
        if occurs_check and tb is Struct and occurs(a, b):
            return False
        a.ref = b
        trail.append(a)
        return True
    if tb is Var:
        if occurs_check and ta is Struct and occurs(b, a):
            return False
        b.ref = a
        trail.append(b)
        return True
    if ta is Struct:
        if tb is not Struct or a.key is not b.key:
            return False
        for x, y in zip(a.args, b.args):
            if not unify(x, y, trail, occurs_check):
                return False
        return True
    return ta is tb and a == b


def build(p, env):
    """Instantiate a compiled pattern, allocating fresh variables on demand."""
    tp = type(p)
    if tp is Local:
        cur = env[p.index]
        if cur is None:
            cur = env[p.index] = Var(p.name)
        return cur
    if tp is PStruct:
        return Struct(p.name, [build(a, env) for a in p.args], p.key)
    return p


def match(p, t, env, trail, occurs_check=True):
    """Unify pattern ``p`` (under ``env``) with runtime term ``t``."""
    tp = type(p)
    if tp is Local:
        cur = env[p.index]
        if cur is None:
            env[p.index] = t
            return True
        return unify(cur, t, trail, occurs_check)
    if tp is PStruct:
        t = deref(t)
        tt = type(t)
        if tt is Struct:
            if p.key is not t.key:
                return False
            for pa, ta in zip(p.args, t.args):
                if not match(pa, ta, env, trail, occurs_check):
                    return False
            return True
        if tt is Var:
            new = build(p, env)
            if occurs_check and occurs(t, new):
                return False
            t.ref = new
            trail.append(t)
            return True
        return False
    return unify(p, t, trail, occurs_check)


def match_args(pargs, targs, env, trail, occurs_check=True):
    for pa, ta in zip(pargs, targs):
        if not match(pa, ta, env, trail, occurs_check):
            return False
    return True


def is_ground(t):
    t = deref(t)
    if type(t) is Var:
        return False
    if type(t) is Struct:
        for a in t.args:
            if not is_ground(a):
                return False
    return True


def resolve(t):
    """Copy of ``t`` with every bound variable replaced by its value."""
    t = deref(t)
    if type(t) is Struct and t.args:
        return Struct(t.name, [resolve(a) for a in t.args], t.key)
    return t
