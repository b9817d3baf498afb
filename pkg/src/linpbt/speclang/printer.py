"""Rendering terms as text.

``pretty`` without domain printers produces text that the parser reads back
to an alpha-equivalent term. Domain printers (``printers=``) map a functor key
to ``fn(term, render) -> str | None``; returning ``None`` falls back to the
generic form. Domain output is for humans and need not re-parse.
"""

import re

from ..terms import Struct, Var, deref

_PLAIN = re.compile(r"[a-z][A-Za-z0-9_]*\Z")

# operator -> (precedence, max precedence of left child, of right child)
_INFIX = {
    ("x", 2): (2, 2, 1),
    ("&", 2): (3, 3, 2),
    ("->", 2): (4, 3, 4),
    (",", 2): (5, 4, 5),
}


def quote_atom(name, arity=0):
    if _PLAIN.match(name) and (name != "bang" or arity):
        return name
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


def var_text(v, ids=True):
    if not ids:
        return v.name
    return f"{v.name}_{v.id}"


def pretty(t, printers=None, ids=True):
    """Deterministic text for ``t`` (dereferenced through bindings).

    ``ids=False`` prints variables by their hint alone; that is stable across
    runs (ids are allocation order) but no longer distinguishes variables
    that share a hint.
    """

    def render(u, level=5):
        u = deref(u)
        tu = type(u)
        if tu is Var:
            return var_text(u, ids)
        if tu is int:
            return str(u)
        if printers:
            fn = printers.get(u.key)
            if fn is not None:
                s = fn(u, render)
                if s is not None:
                    return s
        return generic(u, level)

    def generic(u, level):
        op = _INFIX.get(u.key)
        if op is not None:
            prec, lmax, rmax = op
            s = f"{render(u.args[0], lmax)} {u.name} {render(u.args[1], rmax)}"
            return f"({s})" if prec > level else s
        if u.name == "cons" and len(u.args) == 2:
            return render_list(u)
        name = quote_atom(u.name, len(u.args))
        if not u.args:
            return name
        return f"{name}({', '.join(render(a, 4) for a in u.args)})"

    def render_list(u):
        items = []
        while type(u) is Struct and u.name == "cons" and len(u.args) == 2:
            items.append(render(u.args[0], 4))
            u = deref(u.args[1])
        if type(u) is Struct and u.name == "nil" and not u.args:
            return f"[{', '.join(items)}]"
        return f"[{', '.join(items)} | {render(u, 4)}]"

    return render(t)


def clause_text(head, body, weight=1, ids=False, fact_body=None):
    """Source form of a clause whose variables carry their hints."""
    h = pretty(head, ids=ids)
    b = deref(body)
    w = "" if weight == 1 else f" # {weight}"
    if fact_body is not None and type(b) is Struct and b.key == fact_body:
        return f"{h}{w}."
    return f"{h} <- {pretty(b, ids=ids)}{w}."
