"""Bundled specifications, the IMP variable pool and the mutant registry.

Specs live as ``.lli`` files under ``data/`` (override the directory with
``LINPBT_CORPUS``). The IMP specs depend on a variable pool: typing context,
initial state and the leaves the generators draw from. Those sentences are
produced from a ``Pool`` and loaded ahead of the static file, so generator
clause order is: leaves, then compound forms.
"""

import os
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigurationError, MutantError
from ..speclang.program import Clause, parse_clause, parse_program
from .printers import IMP_PRINTERS, LJF_PRINTERS, PRINTERS, show

DATA = Path(__file__).with_name("data")

SPECS = ("ljf", "imp_linear", "imp_vanilla", "stack_machine")

# spec -> (dialect, files loaded in order)
_LAYOUT = {
    "ljf": ("linear", ("ljf.lli",)),
    "imp_linear": ("linear", ("imp_linear.lli",)),
    "imp_vanilla": ("vanilla", ("imp_vanilla.lli",)),
    "stack_machine": ("linear", ("imp_linear.lli", "stack_machine.lli")),
}

# mutants of a spec also apply to the specs built on top of it
_BASES = {"stack_machine": ("imp_linear",)}


def corpus_dir():
    env = os.environ.get("LINPBT_CORPUS")
    return Path(env) if env else DATA


@dataclass(frozen=True)
class Pool:
    """IMP variables ``(name, type, initial value)`` and literal leaves."""

    variables: tuple = (("w", "tint", "vi(0)"), ("x", "tbool", "vb(tt)"), ("y", "tbool", "vb(ff)"))
    ints: tuple = (0, 1)
    bools: tuple = ("tt", "ff")

    def names(self):
        return [v[0] for v in self.variables]

    def sentences(self, dialect="linear"):
        out = []
        for name, ty, _ in self.variables:
            out.append(f"gamma({name},{ty}).")
        out.append(f"vars([{','.join(self.names())}]).")
        for n in self.ints:
            out.append(f"tyexp(i({n}),tint).")
        for b in self.bools:
            out.append(f"tyexp(b({b}),tbool).")
        for name, ty, _ in self.variables:
            out.append(f"tyexp(v({name}),{ty}).")
        out.append("tycmd(skip).")
        for name, ty, _ in self.variables:
            out.append(f"tycmd(asn({name},E)) <- tyexp(E,{ty}).")
        state = ", ".join(f"var({n},{v})" for n, _, v in self.variables)
        if dialect == "linear":
            out.append(f"context sigma0: {state}.")
        else:
            out.append(f"init_state([{state}]).")
        return "\n".join(out) + "\n"


DEFAULT_POOL = Pool()


def load_spec(name, pool=None):
    """Parse and validate a bundled specification."""
    if name not in _LAYOUT:
        raise ConfigurationError(f"unknown spec {name!r}; expected one of {', '.join(SPECS)}")
    dialect, files = _LAYOUT[name]
    root = corpus_dir()
    parts = []
    if name != "ljf":
        parts.append(("<pool>", (pool or DEFAULT_POOL).sentences(dialect)))
    for f in files:
        try:
            parts.append((str(root / f), (root / f).read_text(encoding="utf-8")))
        except OSError as e:
            raise ConfigurationError(f"cannot read {root / f}: {e.strerror}") from None
    prog = None
    for source, text in parts:
        p = parse_program(text, source, dialect, name)
        prog = p if prog is None else prog.extend(p)
    prog.name = name
    return prog


# ---- mutants ---------------------------------------------------------------


@dataclass
class Mutant:
    id: str
    spec: str
    judgment: str
    kind: str
    description: str = ""
    ops: list = field(default_factory=list)


_HEADER = re.compile(r"\[(\w+)\]\s*(.*)")


def parse_mutants(text, source="mutants.txt"):
    """Read the registry format documented at the top of ``mutants.txt``."""
    out = {}
    cur = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if cur is not None and not cur.ops and not cur.description:
                cur.description = line[1:].strip()
            continue
        m = _HEADER.match(line)
        if m:
            fields = dict(kv.split("=", 1) for kv in m.group(2).split())
            cur = Mutant(m.group(1), fields.get("spec"), fields.get("judgment"), fields.get("kind"))
            out[cur.id] = cur
            continue
        if cur is None or line[0] not in "=-+":
            raise MutantError(f"{source}:{lineno}: expected a mutant header or a clause line")
        cur.ops.append((line[0], parse_clause(line[1:].strip())))
    return out


_MUTANTS = None


def mutants():
    """The registry, ``{id: Mutant}`` in file order."""
    global _MUTANTS
    if _MUTANTS is None:
        path = corpus_dir() / "mutants.txt"
        _MUTANTS = parse_mutants(path.read_text(encoding="utf-8"), str(path))
    return _MUTANTS


def get_mutant(mid):
    if isinstance(mid, Mutant):
        return mid
    try:
        return mutants()[mid]
    except KeyError:
        raise MutantError(f"unknown mutant {mid!r}") from None


def _find(cs, clause, mid):
    for i, c in enumerate(cs):
        if c.head == clause.head and c.body == clause.body:
            return i
    raise MutantError(f"{mid}: clause not in program: {clause.text()}")


def apply_mutant(program, mid):
    """A fresh program with the overlay of ``mid`` applied.

    The overlay is a sequence of anchor/remove/insert lines. Each predicate
    has an insertion cursor that anchors and removals move; an insertion
    without a cursor goes at the end of its predicate.
    """
    m = get_mutant(mid)
    if program.name != m.spec and m.spec not in _BASES.get(program.name, ()):
        raise MutantError(f"{m.id} targets {m.spec}, not {program.name}")
    if program.dialect != "linear":
        raise MutantError(f"{m.id} targets a linear spec")
    p = program.copy()
    log = []
    cursor = {}
    for op, clause in m.ops:
        cs = p.preds.setdefault(clause.key, [])
        if op == "=":
            cursor[clause.key] = _find(cs, clause, m.id) + 1
        elif op == "-":
            i = _find(cs, clause, m.id)
            del cs[i]
            cursor[clause.key] = i
            log.append(("-", clause.key, i, clause))
        else:
            i = cursor.get(clause.key, len(cs))
            cs.insert(i, clause)
            cursor[clause.key] = i + 1
            log.append(("+", clause.key, i, clause))
    p.overlays = program.overlays + ((m.id, tuple(log)),)
    return p


def revert_mutant(program, mid):
    """Undo the most recent overlay, which must be ``mid``."""
    m = get_mutant(mid)
    overlays = program.overlays
    if not overlays or overlays[-1][0] != m.id:
        raise MutantError(f"{m.id} is not the last overlay applied to {program.name}")
    p = program.copy()
    for op, key, i, clause in reversed(overlays[-1][1]):
        cs = p.preds[key]
        if op == "+":
            del cs[i]
        else:
            cs.insert(i, clause)
    p.overlays = overlays[:-1]
    return p


def mutated(spec, mid, pool=None):
    return apply_mutant(load_spec(spec, pool), mid)


# ---- properties ------------------------------------------------------------

SUITE = ("dtx", "srx", "srv", "pr", "eq")
MBT = {"exec": ("exec_cl", "exec_lc"), "type": ("type_cl", "type_lc")}
# mutated judgment -> model-based pair covering it
MBT_FOR = {"eval": "exec", "exec": "exec", "type": "type"}


def programs_for(spec, pool=None):
    """Engine -> program map for the properties declared in ``spec``."""
    if spec == "imp_vanilla":
        return {"vanilla": load_spec(spec, pool)}
    progs = {"linear": load_spec(spec, pool)}
    if spec != "ljf":
        progs["vanilla"] = load_spec("imp_vanilla", pool)
    return progs


def properties(spec="imp_linear", programs=None, names=None, pool=None):
    """The properties declared in ``spec``, wired to their programs."""
    from ..pbt import property_from_decl

    programs = programs or programs_for(spec, pool)
    printers = PRINTERS.get(spec)
    decls = programs["vanilla" if spec == "imp_vanilla" else "linear"].props
    if names is not None:
        known = {d.name for d in decls}
        missing = [n for n in names if n not in known]
        if missing:
            raise ConfigurationError(f"unknown properties in {spec}: {', '.join(missing)}")
        decls = [d for n in names for d in decls if d.name == n]
    return [property_from_decl(d, programs, printers) for d in decls]


def get_property(name, spec=None, programs=None, pool=None):
    for s in ([spec] if spec else ["imp_linear", "ljf", "stack_machine"]):
        progs = programs or programs_for(s, pool)
        primary = progs.get("linear") or progs["vanilla"]
        if any(d.name == name for d in primary.props):
            return properties(s, progs, [name])[0]
    raise ConfigurationError(f"unknown property {name!r}")


__all__ = [
    "DATA", "SPECS", "Pool", "DEFAULT_POOL", "load_spec", "corpus_dir",
    "Mutant", "parse_mutants", "mutants", "get_mutant", "apply_mutant", "revert_mutant",
    "mutated", "SUITE", "MBT", "MBT_FOR", "programs_for", "properties", "get_property",
    "PRINTERS", "LJF_PRINTERS", "IMP_PRINTERS", "show", "Clause",
]
