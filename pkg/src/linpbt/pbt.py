"""Generate-and-test driver.

A property is a list of stages over shared logic variables:

    gen      G   data generators (their bindings are the witness)
    pre      G   preconditions, all solutions explored
    conclude Q   a counterexample is a witness for which Q is refuted
    forbid   Q   a counterexample is a witness for which Q is provable

which is the query "exists x. gen(x) and pre(x) and not Q(x)" run with a
bounded negation. Each stage names its engine (``linear`` kernel or
``vanilla`` SLD), its initial context and its certificate.
"""

import gc
import time
from dataclasses import dataclass, field

from . import kernel, vanilla
from .errors import ConfigurationError, ReplayMismatch, StepBudgetExceeded
from .fpc import Height, Pair, Random, Size, parse_certificate
from .speclang.goals import ResourceContext, Slot
from .speclang.parser import parse_term
from .speclang.printer import pretty
from .terms import is_ground_raw, resolve, term_vars, undo, unify_raw

ENGINES = ("linear", "vanilla")
DEFAULT_TEST_FACTOR = 4


@dataclass
class Stage:
    kind: str
    goal: object
    engine: str = "linear"
    context: tuple = ()
    cert: object = None
    context_name: str = None

    @property
    def negated(self):
        return self.kind == "conclude"


@dataclass
class Property:
    name: str
    stages: list
    programs: dict
    variables: dict = field(default_factory=dict)
    printers: dict = None

    @property
    def generators(self):
        return [s for s in self.stages if s.kind == "gen"]

    @property
    def preconditions(self):
        return [s for s in self.stages if s.kind == "pre"]

    @property
    def conclusion(self):
        return self.stages[-1]

    def witness_vars(self):
        out = {}
        for s in self.generators:
            for v in term_vars(s.goal):
                out.setdefault(v.name, v)
        return out

    def with_program(self, engine, program):
        progs = dict(self.programs)
        progs[engine] = program
        return Property(self.name, self.stages, progs, self.variables, self.printers)

    def fingerprints(self):
        used = {s.engine for s in self.stages}
        return {e: self.programs[e].fingerprint() for e in sorted(used)}


def property_from_decl(decl, programs, printers=None):
    """Build a ``Property`` from a parsed ``prop`` directive.

    ``programs`` maps engine names to programs; named contexts are looked up
    in the linear program. A stage without a certificate gets one derived
    from the generators: their certificate for other generators, and a
    height ``DEFAULT_TEST_FACTOR`` times larger for tests.
    """
    if decl.stages[-1].kind not in ("conclude", "forbid"):
        raise ConfigurationError(f"{decl.name}: the last stage must be conclude or forbid")
    if any(s.kind in ("conclude", "forbid") for s in decl.stages[:-1]):
        raise ConfigurationError(f"{decl.name}: only the last stage may conclude")
    stages = []
    gen_cert = None
    for sd in decl.stages:
        engine = sd.engine or "linear"
        if engine not in ENGINES:
            raise ConfigurationError(f"{decl.name}: unknown engine {engine!r}")
        if engine not in programs:
            raise ConfigurationError(f"{decl.name}: no program for engine {engine}")
        ctx = ()
        if sd.context:
            if engine != "linear":
                raise ConfigurationError(f"{decl.name}: contexts need the linear engine")
            named = programs["linear"].contexts
            if sd.context not in named:
                raise ConfigurationError(f"{decl.name}: unknown context {sd.context!r}")
            ctx = tuple(named[sd.context])
        cert = parse_certificate(sd.cert) if sd.cert else None
        if sd.kind == "gen" and cert is not None and gen_cert is None:
            gen_cert = cert
        stages.append(Stage(sd.kind, sd.goal, engine, ctx, cert, sd.context))
    for s in stages:
        if s.cert is None:
            if s.kind == "gen" and gen_cert is not None:
                s.cert = gen_cert
            else:
                s.cert = Height(DEFAULT_TEST_FACTOR * _bound(gen_cert or Height(5)))
    return Property(decl.name, stages, dict(programs), dict(decl.variables), printers)


def _bound(cert):
    if isinstance(cert, (Height, Size)):
        return cert.n
    if isinstance(cert, Pair):
        return max(_bound(cert.left), _bound(cert.right))
    if isinstance(cert, Random):
        return cert.guard
    return 5


# ---- strategies --------------------------------------------------------------


@dataclass
class Exhaustive:
    """Deterministic deepening over ``schedule`` (default: derived from the
    generator certificate, bounds 1..n). Witnesses seen at a smaller bound
    are not tested again."""

    schedule: list = None

    def certs(self, gen_cert):
        if self.schedule is not None:
            return list(self.schedule)
        return deepening(gen_cert)


@dataclass
class Randomized:
    """``trials`` random draws. The generator certificate is ``cert`` if
    given, else a random certificate paired with the declared generator
    bound so random data stays inside the exhaustive space."""

    trials: int = 100
    seed: int = 0
    cert: object = None
    guard: int = 20

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigurationError("trials must be at least 1")


def deepening(cert):
    """``[c_1, ..., c_n]`` where ``c_n`` is ``cert`` and ``c_k`` lowers every
    height/size bound of the generator to at most ``k``."""
    n = _bound(cert)
    return [_cap(cert, k) for k in range(1, n + 1)]


def _cap(cert, k):
    if isinstance(cert, Height):
        return Height(min(cert.n, k))
    if isinstance(cert, Size):
        return Size(min(cert.n, k))
    if isinstance(cert, Pair):
        return Pair(_cap(cert.left, k), _cap(cert.right, k))
    return cert


# ---- results -----------------------------------------------------------------


@dataclass
class Stats:
    generated: int = 0
    tested: int = 0
    reached: int = 0
    diverged: int = 0
    elapsed: float = 0.0
    per_bound: list = field(default_factory=list)


@dataclass
class CexReport:
    prop: str
    witness: dict
    pretty: dict
    cert: str
    stats: Stats
    fingerprints: dict
    details: dict = field(default_factory=dict)
    trial: int = None

    def summary(self):
        return "; ".join(f"{k} = {v}" for k, v in self.pretty.items())

    def pretty_text(self):
        """The witness in domain syntax, e.g. ``w := 0 - 1``."""
        return "; ".join(self.pretty.values())


@dataclass
class Pass:
    prop: str
    stats: Stats


@dataclass
class Counterexample:
    report: CexReport

    @property
    def prop(self):
        return self.report.prop

    @property
    def stats(self):
        return self.report.stats


# ---- running stages --------------------------------------------------------------


def _context(stage):
    ctx = stage.__dict__.get("_ctx")
    if ctx is None:
        ctx = stage._ctx = ResourceContext(Slot(t, p) for t, p in stage.context)
    return ctx


def stage_solutions(prop, stage, cert=None, budget=None, state_steps=None):
    """Solutions of one stage, bindings left in place while suspended."""
    cert = cert if cert is not None else stage.cert
    program = prop.programs[stage.engine]
    if stage.engine == "vanilla":
        st = vanilla.VanillaState(program, cert, budget=budget)
        gen = vanilla.run(st, stage.goal, {})
        try:
            for _ in gen:
                yield True
        finally:
            gen.close()
            if state_steps is not None:
                state_steps[0] += st.steps
        return
    st = kernel.ProofState(program, cert, _context(stage), budget=budget)
    gen = kernel.prove(st, stage.goal, {}, closed=True)
    try:
        for _ in gen:
            yield True
    finally:
        gen.close()
        if state_steps is not None:
            state_steps[0] += st.steps


def _conj(prop, stages, certs=None, budget=None, steps=None):
    """Backtrack through a conjunction of stages."""
    if not stages:
        yield True
        return
    first, rest = stages[0], stages[1:]
    c = certs[0] if certs else None
    for _ in stage_solutions(prop, first, c, budget, steps):
        yield from _conj(prop, rest, certs[1:] if certs else None, budget, steps)


def _details(prop, skip=()):
    return {n: pretty(v, prop.printers, ids=False) for n, v in prop.variables.items()
            if not n.startswith("_") and n not in skip and is_ground_raw(v)}


def violated(prop, budget=None, steps=None, reached=None):
    """With the witness bound, look for a precondition solution that
    violates the conclusion. Returns the bindings of that branch (a dict,
    possibly empty) or ``None``. ``reached`` (a one-element list) counts
    how often the preconditions held."""
    concl = prop.conclusion
    for _ in _conj(prop, prop.preconditions, None, budget, steps):
        if reached is not None:
            reached[0] += 1
        if concl.negated:
            if not is_ground_raw(concl.goal):
                names = ", ".join(sorted({v.name for v in term_vars(concl.goal)}))
                raise ConfigurationError(
                    f"{prop.name}: conclusion not ground after generation; unbound: {names}"
                )
            bad = not any(stage_solutions(prop, concl, None, budget, steps))
        else:
            bad = any(stage_solutions(prop, concl, None, budget, steps))
        if bad:
            return _details(prop)
    return None


class GenCache:
    """Generated witnesses keyed by generator program, goal and certificate.

    Generation does not depend on the programs under test when the
    generators run on a different program (the trusted reference), so
    matrix runs share one cache across mutants.
    """

    def __init__(self):
        self._store = {}

    def witnesses(self, prop, gens, cert):
        key = tuple((id(prop.programs[g.engine]), id(g.goal)) for g in gens) + (cert.literal(),)
        hit = self._store.get(key)
        if hit is None:
            wvars = prop.witness_vars()
            rows = []
            certs = [cert] + [None] * (len(gens) - 1)
            for _ in _conj(prop, gens, certs):
                rows.append(tuple(resolve(v) for v in wvars.values()))
            # keep the programs alive so their ids stay unique
            hit = self._store[key] = (rows, [prop.programs[g.engine] for g in gens])
        return hit[0]


def _generate(prop, gens, cert, cache):
    """Bind the witness variables to each generated datum in turn."""
    if cache is None:
        certs = [cert] + [None] * (len(gens) - 1)
        yield from _conj(prop, gens, certs)
        return
    wvars = list(prop.witness_vars().values())
    trail = []
    for row in cache.witnesses(prop, gens, cert):
        ok = all(unify_raw(v, t, trail, True) for v, t in zip(wvars, row))
        try:
            if ok:
                yield True
        finally:
            undo(trail, 0)


def _key(wvars):
    return tuple(resolve(v) for v in wvars.values())


def _report(prop, wvars, cert, stats, details, trial=None):
    printers = prop.printers
    return CexReport(
        prop=prop.name,
        witness={n: pretty(v, ids=False) for n, v in wvars.items()},
        pretty={n: pretty(v, printers, ids=False) for n, v in wvars.items()},
        cert=cert.literal(),
        stats=stats,
        fingerprints=prop.fingerprints(),
        details={k: v for k, v in details.items() if k not in wvars},
        trial=trial,
    )


def _test(prop, budget, stats):
    stats.tested += 1
    hits = [0]
    try:
        return violated(prop, budget, None, hits)
    except StepBudgetExceeded:
        stats.diverged += 1
        return None
    finally:
        if hits[0]:
            stats.reached += 1


def run_property(prop, strategy=None, budget=None, cache=None, clock=time.perf_counter):
    """Search for a counterexample; returns ``Pass`` or ``Counterexample``.

    ``budget`` caps rule applications per test-stage run; a candidate whose
    preconditions or conclusion exceed it counts as diverged, not failed.
    ``cache`` (a ``GenCache``) reuses generated data across runs.
    """
    # the search allocates no reference cycles worth collecting, while the
    # cyclic collector would rescan every cached term on each full pass
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        return _run(prop, strategy, budget, cache, clock)
    finally:
        if was_enabled:
            gc.enable()


def _run(prop, strategy, budget, cache, clock):
    strategy = strategy or Exhaustive()
    gens = prop.generators
    if not gens:
        raise ConfigurationError(f"{prop.name}: no generator stage")
    wvars = prop.witness_vars()
    stats = Stats()
    t0 = clock()
    if isinstance(strategy, Randomized):
        # rewound so that running the same strategy twice draws the same data
        rnd = strategy.cert.fresh() if strategy.cert else Random(strategy.seed, strategy.guard)
        if strategy.cert is None:
            rnd = Pair(rnd, gens[0].cert)
        certs = [rnd] + [None] * (len(gens) - 1)
        for trial in range(strategy.trials):
            for _ in _conj(prop, gens, certs):
                stats.generated += 1
                bad = _test(prop, budget, stats)
                if bad is not None:
                    stats.elapsed = clock() - t0
                    return Counterexample(_report(prop, wvars, rnd, stats, bad, trial))
                break
        stats.elapsed = clock() - t0
        return Pass(prop.name, stats)

    seen = set()
    for cert in strategy.certs(gens[0].cert):
        fresh = 0
        for _ in _generate(prop, gens, cert, cache):
            k = _key(wvars)
            if k in seen:
                continue
            seen.add(k)
            fresh += 1
            stats.generated += 1
            bad = _test(prop, budget, stats)
            if bad is not None:
                stats.elapsed = clock() - t0
                stats.per_bound.append((cert.literal(), fresh))
                return Counterexample(_report(prop, wvars, cert, stats, bad))
        stats.per_bound.append((cert.literal(), fresh))
    stats.elapsed = clock() - t0
    return Pass(prop.name, stats)


def replay(report, prop):
    """Does the reported witness still violate ``prop``?"""
    if report.prop != prop.name:
        raise ReplayMismatch(f"report is for {report.prop!r}, not {prop.name!r}")
    fps = prop.fingerprints()
    if fps != report.fingerprints:
        raise ReplayMismatch(f"{prop.name}: program signatures changed since the report")
    wvars = prop.witness_vars()
    if set(report.witness) != set(wvars):
        raise ReplayMismatch(f"{prop.name}: witness variables differ")
    trail = []
    try:
        for name, text in report.witness.items():
            t = parse_term(text, {})
            if not unify_raw(wvars[name], t, trail, True):
                return False
        gens = prop.generators
        cert = parse_certificate(report.cert)
        if isinstance(cert, (Random, Pair)) and _has_random(cert):
            cert = cert.deterministic()
        certs = [cert] + [None] * (len(gens) - 1)
        for _ in _conj(prop, gens, certs):
            if violated(prop) is not None:
                return True
        return False
    finally:
        undo(trail, 0)


def _has_random(cert):
    if isinstance(cert, Random):
        return True
    if isinstance(cert, Pair):
        return _has_random(cert.left) or _has_random(cert.right)
    return False


def resolve_witness(report):
    return {n: parse_term(t, {}) for n, t in report.witness.items()}


__all__ = [
    "Stage", "Property", "property_from_decl", "Exhaustive", "Randomized", "deepening",
    "Stats", "CexReport", "Pass", "Counterexample", "GenCache", "stage_solutions", "violated",
    "run_property", "replay", "resolve_witness", "ENGINES",
]
