"""Natively dispatched predicates shared by the linear kernel and the vanilla engine.

Each built-in takes the argument tuple and the trail and returns whether it
succeeded. They are deterministic, consume no resources and never see a
certificate.
"""

from .errors import InstantiationError
from .terms import Struct, Var, deref, functor_key, is_ground_raw, unify_raw


def _int_arg(t, name):
    t = deref(t)
    if type(t) is Var:
        raise InstantiationError(f"{name}: argument is not instantiated")
    if type(t) is int:
        return t
    return None


def _arith(op, name):
    def run(args, trail, occurs_check=True):
        a = _int_arg(args[0], name)
        b = _int_arg(args[1], name)
        if a is None or b is None:
            return False
        return unify_raw(args[2], op(a, b), trail, occurs_check)

    run.__name__ = name
    return run


def _compare(op, name):
    def run(args, trail, occurs_check=True):
        a = _int_arg(args[0], name)
        b = _int_arg(args[1], name)
        if a is None or b is None:
            return False
        return op(a, b)

    run.__name__ = name
    return run


def _neq(args, trail, occurs_check=True):
    if not (is_ground_raw(args[0]) and is_ground_raw(args[1])):
        raise InstantiationError("neq: arguments must be ground")
    return not _same(args[0], args[1])


def _same(a, b):
    a = deref(a)
    b = deref(b)
    if type(a) is Struct and type(b) is Struct:
        return (
            a.key is b.key
            and all(_same(x, y) for x, y in zip(a.args, b.args))
        )
    return type(a) is type(b) and a == b


def _atom(args, trail, occurs_check=True):
    # type test: an unbound argument simply fails, as in Prolog
    t = deref(args[0])
    return type(t) is Struct and not t.args


BUILTINS = {
    functor_key("sum", 3): _arith(lambda a, b: a + b, "sum"),
    functor_key("sub", 3): _arith(lambda a, b: a - b, "sub"),
    functor_key("mul", 3): _arith(lambda a, b: a * b, "mul"),
    functor_key("lt", 2): _compare(lambda a, b: a < b, "lt"),
    functor_key("le", 2): _compare(lambda a, b: a <= b, "le"),
    functor_key("gt", 2): _compare(lambda a, b: a > b, "gt"),
    functor_key("ge", 2): _compare(lambda a, b: a >= b, "ge"),
    functor_key("eqi", 2): _compare(lambda a, b: a == b, "eqi"),
    functor_key("nei", 2): _compare(lambda a, b: a != b, "nei"),
    functor_key("neq", 2): _neq,
    functor_key("atom", 1): _atom,
}
