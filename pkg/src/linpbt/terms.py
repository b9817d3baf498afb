"""First-order terms, bindings and unification.

The hot primitives live in a compiled extension (``linpbt._ccore``) when it
has been built; otherwise the pure-Python twin ``linpbt._pycore`` is used.
Set ``LINPBT_PURE=1`` to force the fallback.
"""

import os

if os.environ.get("LINPBT_PURE"):
    from . import _pycore as _core
else:
    try:
        from . import _ccore as _core
    except ImportError:  # extension not built
        from . import _pycore as _core

BACKEND = _core.BACKEND

Var = _core.Var
Struct = _core.Struct
Local = _core.Local
PStruct = _core.PStruct
functor_key = _core.functor_key
deref = _core.deref
undo = _core.undo
occurs = _core.occurs
unify_raw = _core.unify
build = _core.build
match = _core.match
match_args = _core.match_args
is_ground_raw = _core.is_ground
resolve = _core.resolve

NIL = Struct("nil")


def atom(name):
    return Struct(name)


def mk(name, *args):
    return Struct(name, args)


def mklist(items, tail=NIL):
    out = tail
    for x in reversed(list(items)):
        out = Struct("cons", (x, out))
    return out


def list_items(t):
    """Python list of the elements of a proper list term, else ``None``."""
    out = []
    t = deref(t)
    while type(t) is Struct and t.name == "cons" and len(t.args) == 2:
        out.append(t.args[0])
        t = deref(t.args[1])
    if type(t) is Struct and t.name == "nil" and not t.args:
        return out
    return None


def term_vars(t, acc=None):
    """Unbound variables of ``t`` in first-occurrence order."""
    if acc is None:
        acc = []
    t = deref(t)
    if type(t) is Var:
        if all(v is not t for v in acc):
            acc.append(t)
    elif type(t) is Struct:
        for a in t.args:
            term_vars(a, acc)
    return acc


class BindingStore:
    """Variable bindings plus the trail that lets search undo them.

    Bindings are recorded on the variables themselves; the trail is the
    ordered log of bound variables, and a checkpoint is a trail length.
    """

    def __init__(self, occurs_check=True):
        self.trail = []
        self.occurs_check = occurs_check

    def mark(self):
        return len(self.trail)

    def undo(self, mark):
        undo(self.trail, mark)

    def bind(self, var, value):
        var.ref = value
        self.trail.append(var)

    def unify(self, a, b):
        """Unify ``a`` and ``b``; on failure the store is left as it was."""
        mark = len(self.trail)
        if unify_raw(a, b, self.trail, self.occurs_check):
            return True
        undo(self.trail, mark)
        return False

    def lookup(self, var):
        return deref(var)

    def is_ground(self, t):
        return is_ground_raw(t)

    def resolve(self, t):
        return resolve(t)

    def bindings(self):
        """Current ``{var id: value}`` view of every trailed binding."""
        return {v.id: v.ref for v in self.trail}


def unify(t1, t2, store):
    """Unify under ``store``; returns the store on success, ``None`` on failure."""
    return store if store.unify(t1, t2) else None


def is_ground(t, store=None):
    return is_ground_raw(t)
