"""Surface-syntax printers for the bundled object languages."""

from ..speclang.printer import pretty
from ..terms import Struct, deref, functor_key

# binary expression constructors: symbol, precedence (higher binds tighter)
_BINOPS = {
    "or": ("\\/", 1),
    "and": ("/\\", 2),
    "eq": ("=", 3),
    "plus": ("+", 4),
    "minus": ("-", 4),
    "times": ("*", 5),
}


def _is(t, name, arity):
    return type(t) is Struct and t.name == name and len(t.args) == arity


def _symbol(t, render):
    t = deref(t)
    if type(t) is Struct and not t.args:
        return t.name
    return render(t)


def expr_text(e, render, level=0):
    e = deref(e)
    if type(e) is not Struct:
        return render(e)
    if _is(e, "i", 1) or _is(e, "b", 1) or _is(e, "v", 1):
        return _symbol(e.args[0], render)
    if _is(e, "neg", 1):
        return "~" + expr_text(e.args[0], render, 6)
    op = _BINOPS.get(e.name)
    if op is None or len(e.args) != 2:
        return render(e)
    sym, prec = op
    s = f"{expr_text(e.args[0], render, prec)} {sym} {expr_text(e.args[1], render, prec + 1)}"
    return f"({s})" if prec < level else s


def cmd_text(c, render):
    c = deref(c)
    if _is(c, "skip", 0):
        return "skip"
    if _is(c, "asn", 2):
        return f"{_symbol(c.args[0], render)} := {expr_text(c.args[1], render)}"
    if _is(c, "seq", 2):
        return f"{cmd_text(c.args[0], render)}; {cmd_text(c.args[1], render)}"
    if _is(c, "ite", 3):
        e, c1, c2 = c.args
        return (f"if {expr_text(e, render)} then {{{cmd_text(c1, render)}}}"
                f" else {{{cmd_text(c2, render)}}}")
    if _is(c, "while", 2):
        return f"while {expr_text(c.args[0], render)} do {{{cmd_text(c.args[1], render)}}}"
    return render(c)


def _value(t, render):
    if len(t.args) == 1:
        return _symbol(t.args[0], render)
    return None


def _binding(t, render):
    x = deref(t.args[0])
    if type(x) is Struct and not x.args:
        return f"{x.name} = {render(t.args[1])}"
    return None


def _imp(t, render):
    def side(u):
        u = deref(u)
        s = render(u)
        return f"({s})" if _is(u, "imp", 2) else s

    return f"{side(t.args[0])} => {side(t.args[1])}"


LJF_PRINTERS = {functor_key("imp", 2): _imp}

IMP_PRINTERS = {
    functor_key("vi", 1): _value,
    functor_key("vb", 1): _value,
    functor_key("var", 2): _binding,
}
for _name in ("i", "b", "v", "neg"):
    IMP_PRINTERS[functor_key(_name, 1)] = lambda t, r: expr_text(t, r)
for _name in _BINOPS:
    IMP_PRINTERS[functor_key(_name, 2)] = lambda t, r: expr_text(t, r)
IMP_PRINTERS[functor_key("skip", 0)] = lambda t, r: "skip"
IMP_PRINTERS[functor_key("asn", 2)] = cmd_text
IMP_PRINTERS[functor_key("seq", 2)] = cmd_text
IMP_PRINTERS[functor_key("ite", 3)] = cmd_text
IMP_PRINTERS[functor_key("while", 2)] = cmd_text

PRINTERS = {
    "ljf": LJF_PRINTERS,
    "imp_linear": IMP_PRINTERS,
    "imp_vanilla": IMP_PRINTERS,
    "stack_machine": IMP_PRINTERS,
}


def show(t, spec=None):
    """Human rendering of ``t`` with the printers of ``spec`` (no var ids)."""
    return pretty(t, PRINTERS.get(spec), ids=False)


__all__ = ["LJF_PRINTERS", "IMP_PRINTERS", "PRINTERS", "show", "expr_text", "cmd_text"]
