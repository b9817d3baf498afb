"""Certificate-driven proof search for the linear language.

The search is an explicit machine rather than nested Python generators, so
that long continuation chains do not exhaust the interpreter stack. A machine
state is ``(mode, x, cert, mask, slots, cont)``:

- ``mode`` is SOLVE (prove goal ``x``) or RET (a subproof finished with
  residual certificate ``x``);
- ``slots`` is a tuple of ``(assumption, persistent)`` pairs, the context;
- ``mask`` is a bit set of consumed linear slots (bit ``i`` for slot ``i``);
- ``cont`` is a linked list of frames saying what to do after a subproof.

Contexts are never split eagerly: a subproof receives the whole context and
returns it with more bits set (input/output resource management). Choice
points hold a trail mark and an iterator over the remaining alternatives.
"""

import itertools
import sys
from dataclasses import dataclass, field

from .builtins import BUILTINS
from .errors import Floundering, IllFormedGoal, StepBudgetExceeded, UnsoundNegation
from .fpc import Size
from .speclang.goals import (
    CONNECTIVE_NAMES,
    K_BANG,
    K_ERASE,
    K_LIMP,
    K_ONE,
    K_TENSOR,
    K_WITH,
    ResourceContext,
    Slot,
)
from .speclang.printer import pretty
from .terms import (
    Struct,
    Var,
    build,
    deref,
    is_ground_raw,
    match_args,
    resolve,
    term_vars,
    undo,
    unify_raw,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

SOLVE = 0
RET = 1

# continuation frame tags
F_TENSOR = 0
F_WITH1 = 1
F_WITH2 = 2
F_LIMP = 3
F_BANG = 4
F_UNFOLD = 5


@dataclass
class Solution:
    bindings: dict
    context: ResourceContext
    residual: object
    steps: int = 0

    def consumed(self):
        return self.context.consumed_indices()


@dataclass
class ProofState:
    """Inputs of one search. The bindings live on the variables themselves;
    ``trail`` records them so the search can undo to any checkpoint."""

    program: object
    cert: object
    context: ResourceContext = field(default_factory=ResourceContext)
    occurs_check: bool = True
    budget: int = None
    trace: object = None
    debug: bool = False
    trail: list = field(default_factory=list)
    steps: int = 0


def _fingerprint(slots, mask):
    parts = []
    for i, (a, pers) in enumerate(slots):
        if (mask >> i) & 1:
            parts.append("□")
        else:
            parts.append(("!" if pers else "") + pretty(a, ids=False))
    return "[" + ", ".join(parts) + "]"


def _atomic(t):
    return type(t) is Struct and t.name not in CONNECTIVE_NAMES


def prove(st, goal, query_vars=None, closed=False):
    """Lazily enumerate solutions of ``goal`` from ``st.context``.

    Each yielded ``Solution`` carries a resolved snapshot of ``query_vars``
    (default: the goal's variables); the live bindings stay in place until
    the consumer asks for the next solution. Closing the generator undoes
    everything the search bound.

    With ``closed=True`` only proofs consuming every linear slot count, and
    the residual certificate is yielded instead of a ``Solution``.
    """
    program = st.program
    trail = st.trail
    oc = st.occurs_check
    budget = st.budget
    trace = st.trace
    debug = st.debug
    preds = program.preds
    builtins = BUILTINS
    base = len(trail)

    if query_vars is None:
        query_vars = {}
        for v in term_vars(goal):
            query_vars.setdefault(v.name if v.name != "_" else f"_{v.id}", v)

    init_slots = tuple((s.assumption, s.persistent) for s in st.context)
    init_mask = 0
    for i, s in enumerate(st.context):
        if s.consumed and not s.persistent:
            init_mask |= 1 << i
    want = full_linear(init_slots)

    def emit(tag, g, cert, slots, mask):
        trace(f"{tag} {pretty(g, ids=False)} {_fingerprint(slots, mask)} {cert.literal()}")

    def atom_alternatives(g, cert, mask, slots, cont, mark):
        key = g.key
        n = len(slots)
        # init: linear slots first, most recent first, then persistent ones
        for want_pers in (False, True):
            for i in range(n - 1, -1, -1):
                a, pers = slots[i]
                if pers is not want_pers or (not pers and (mask >> i) & 1):
                    continue
                da = deref(a)
                if type(da) is Struct and da.key is not key:
                    continue
                if unify_raw(da, g, trail, oc):
                    if trace:
                        emit("bang-init" if pers else "init", g, cert, slots, mask)
                    yield (RET, cert.axiom(), None, mask if pers else mask | (1 << i), slots, cont)
                undo(trail, mark)
        clauses = preds.get(key)
        if not clauses:
            return
        if cert.threaded and type(cert) is not Size:
            cont = (F_UNFOLD, cert, cont)
        gargs = g.args
        for clause, c2 in cert.unfold(clauses):
            env = [None] * clause.nvars
            if match_args(clause.hargs, gargs, env, trail, oc):
                if trace:
                    emit("unfold", g, cert, slots, mask)
                yield (SOLVE, build(clause.body, env), c2, mask, slots, cont)
            undo(trail, mark)

    def erase_alternatives(cert, mask, slots, cont):
        avail = [i for i, (_, pers) in enumerate(slots) if not pers and not (mask >> i) & 1]
        r = cert.axiom()
        for k in range(len(avail), -1, -1):
            for combo in itertools.combinations(avail, k):
                m = mask
                for i in combo:
                    m |= 1 << i
                yield (RET, r, None, m, slots, cont)

    stack = []
    state = (SOLVE, goal, st.cert, init_mask, init_slots, None)
    steps = 0
    try:
        while True:
            if state is None:
                state = None
                while stack:
                    mark, it = stack[-1]
                    undo(trail, mark)
                    state = next(it, None)
                    if state is not None:
                        break
                    stack.pop()
                if state is None:
                    return
            mode, x, cert, mask, slots, cont = state
            steps += 1
            if budget is not None and steps > budget:
                st.steps += steps
                steps = 0
                raise StepBudgetExceeded(f"more than {budget} rule applications")
            if debug:
                _check_state(slots, mask, len(init_slots))

            if mode == SOLVE:
                g = deref(x)
                tg = type(g)
                if tg is not Struct:
                    if tg is Var:
                        raise Floundering(f"unbound goal variable {pretty(g)}")
                    raise IllFormedGoal(f"{g!r} is not a goal")
                k = g.key
                if k is K_TENSOR:
                    if trace:
                        emit("tensor", g, cert, slots, mask)
                    state = (SOLVE, g.args[0], cert.tensor_left(), mask, slots,
                             (F_TENSOR, g.args[1], cert, cont))
                elif k in builtins:
                    if trace:
                        emit("builtin", g, cert, slots, mask)
                    mark = len(trail)
                    if builtins[k](g.args, trail, oc):
                        state = (RET, cert.axiom(), None, mask, slots, cont)
                    else:
                        undo(trail, mark)
                        state = None
                elif k is K_LIMP:
                    a = deref(g.args[0])
                    if not _atomic(a):
                        raise IllFormedGoal(f"non-atomic antecedent in {pretty(g)}")
                    if trace:
                        emit("lolli", g, cert, slots, mask)
                    n = len(slots)
                    state = (SOLVE, g.args[1], cert, mask, slots + ((a, False),),
                             (F_LIMP, n, cont))
                elif k is K_WITH:
                    if trace:
                        emit("with", g, cert, slots, mask)
                    state = (SOLVE, g.args[0], cert, mask, slots,
                             (F_WITH1, g.args[1], mask, cert, cont))
                elif k is K_BANG:
                    if trace:
                        emit("bang", g, cert, slots, mask)
                    blocked = mask
                    for i, (_, pers) in enumerate(slots):
                        if not pers:
                            blocked |= 1 << i
                    state = (SOLVE, g.args[0], cert, blocked, slots, (F_BANG, mask, cont))
                elif k is K_ONE:
                    if trace:
                        emit("one", g, cert, slots, mask)
                    state = (RET, cert.axiom(), None, mask, slots, cont)
                elif k is K_ERASE:
                    if trace:
                        emit("erase", g, cert, slots, mask)
                    it = erase_alternatives(cert, mask, slots, cont)
                    stack.append((len(trail), it))
                    state = next(it)
                else:
                    if g.name in CONNECTIVE_NAMES:
                        raise IllFormedGoal(f"connective {g.name} used with arity {len(g.args)}")
                    mark = len(trail)
                    it = atom_alternatives(g, cert, mask, slots, cont, mark)
                    state = next(it, None)
                    if state is not None:
                        stack.append((mark, it))
                continue

            # RET: x is the residual certificate of the finished subproof
            if cont is None:
                if closed:
                    if mask & want == want:
                        yield x
                    state = None
                    continue
                out = ResourceContext(
                    Slot(a, pers, bool((mask >> i) & 1)) for i, (a, pers) in enumerate(init_slots)
                )
                sol = Solution(
                    {name: resolve(v) for name, v in query_vars.items()},
                    out,
                    x,
                    st.steps + steps,
                )
                yield sol
                state = None
                continue
            tag = cont[0]
            if tag == F_TENSOR:
                _, g2, c0, nxt = cont
                state = (SOLVE, g2, c0.tensor_right(x), mask, slots, nxt)
            elif tag == F_LIMP:
                _, n, nxt = cont
                if not (mask >> n) & 1:
                    state = None
                else:
                    state = (RET, x, None, mask & ~(1 << n), slots[:n], nxt)
            elif tag == F_UNFOLD:
                _, c0, nxt = cont
                state = (RET, c0.after_unfold(x), None, mask, slots, nxt)
            elif tag == F_WITH1:
                _, g2, m_in, c0, nxt = cont
                state = (SOLVE, g2, c0, m_in, slots, (F_WITH2, mask, x, c0, nxt))
            elif tag == F_WITH2:
                _, m1, r1, c0, nxt = cont
                if mask != m1:
                    state = None
                else:
                    r = c0.with_join(r1, x)
                    state = None if r is None else (RET, r, None, mask, slots, nxt)
            elif tag == F_BANG:
                _, m0, nxt = cont
                state = (RET, x, None, m0, slots, nxt)
    finally:
        st.steps += steps
        undo(trail, base)


def full_linear(slots):
    m = 0
    for i, (_, pers) in enumerate(slots):
        if not pers:
            m |= 1 << i
    return m


def _check_state(slots, mask, n0):
    if len(slots) < n0:
        raise AssertionError("context shrank below its initial size")
    for i, (_, pers) in enumerate(slots):
        if pers and (mask >> i) & 1:
            raise AssertionError("persistent slot marked consumed")
    if mask >> len(slots):
        raise AssertionError("consumption mark beyond the context")


def _as_context(ctx):
    if ctx is None:
        return ResourceContext()
    if isinstance(ctx, ResourceContext):
        return ctx
    return ResourceContext(ctx)


def solutions_closed(program, context, goal, cert, **kw):
    """Solutions that consume every linear slot of ``context``."""
    ctx = _as_context(context)
    st = ProofState(program, cert, ctx, **kw)
    for sol in prove(st, goal):
        if sol.context.all_linear_consumed():
            yield sol


def provable_closed(program, context, goal, cert, **kw):
    """Is there a proof of ``goal`` consuming every linear slot of ``context``?"""
    st = ProofState(program, cert, _as_context(context), **kw)
    gen = prove(st, goal, {}, closed=True)
    try:
        return next(gen, None) is not None
    finally:
        gen.close()


def solve_closed(program, context, goal, cert, **kw):
    """First solution consuming all linear resources, or ``None``."""
    gen = solutions_closed(program, context, goal, cert, **kw)
    try:
        return next(gen, None)
    finally:
        gen.close()


def refute(program, context, goal, cert, **kw):
    """Bounded negation as failure: no closed proof of ground ``goal`` under ``cert``."""
    if not is_ground_raw(goal):
        names = ", ".join(pretty(v) for v in term_vars(goal))
        raise UnsoundNegation(f"refute needs a ground goal; unbound: {names}")
    ctx = _as_context(context)
    for s in ctx:
        if not is_ground_raw(s.assumption):
            raise UnsoundNegation("refute needs a ground context")
    return not provable_closed(program, ctx, goal, cert, **kw)
