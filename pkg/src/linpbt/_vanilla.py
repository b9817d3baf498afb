"""Certificate-driven SLD resolution for ordinary logic programs.

Goals are ``true``, conjunctions ``(G1, G2)`` and atoms. Clause selection
goes through the same certificate ``unfold`` as the linear kernel, so one
certificate bounds both engines identically; a conjunction threads the
certificate like a tensor.
"""

from dataclasses import dataclass, field

from .builtins import BUILTINS
from .errors import Floundering, IllFormedGoal, StepBudgetExceeded
from .fpc import Size
from .speclang.goals import K_CONJ, K_TRUE
from .speclang.printer import pretty
from .terms import Struct, Var, build, deref, match_args, resolve, term_vars, undo

SOLVE = 0
RET = 1
F_CONJ = 0
F_UNFOLD = 1


@dataclass
class VanillaState:
    program: object
    cert: object
    occurs_check: bool = True
    budget: int = None
    trace: object = None
    trail: list = field(default_factory=list)
    steps: int = 0


def vsolve(program, goal, cert, query_vars=None, **kw):
    """Lazily enumerate ``(bindings, residual)`` for ``goal``."""
    st = VanillaState(program, cert, **kw)
    for b, r in run(st, goal, query_vars):
        yield b, r


def run(st, goal, query_vars=None):
    preds = st.program.preds
    trail = st.trail
    oc = st.occurs_check
    budget = st.budget
    trace = st.trace
    builtins = BUILTINS
    base = len(trail)
    if query_vars is None:
        query_vars = {}
        for v in term_vars(goal):
            query_vars.setdefault(v.name if v.name != "_" else f"_{v.id}", v)

    def alternatives(g, cert, cont, mark):
        clauses = preds.get(g.key)
        if not clauses:
            return
        if cert.threaded and type(cert) is not Size:
            cont = (F_UNFOLD, cert, cont)
        gargs = g.args
        for clause, c2 in cert.unfold(clauses):
            env = [None] * clause.nvars
            if match_args(clause.hargs, gargs, env, trail, oc):
                if trace:
                    trace(f"unfold {pretty(g, ids=False)} {cert.literal()}")
                yield (SOLVE, build(clause.body, env), c2, cont)
            undo(trail, mark)

    stack = []
    state = (SOLVE, goal, st.cert, None)
    steps = 0
    try:
        while True:
            if state is None:
                while stack:
                    mark, it = stack[-1]
                    undo(trail, mark)
                    state = next(it, None)
                    if state is not None:
                        break
                    stack.pop()
                if state is None:
                    return
            mode, x, cert, cont = state
            steps += 1
            if budget is not None and steps > budget:
                raise StepBudgetExceeded(f"more than {budget} resolution steps")
            if mode == SOLVE:
                g = deref(x)
                if type(g) is not Struct:
                    if type(g) is Var:
                        raise Floundering(f"unbound goal variable {pretty(g)}")
                    raise IllFormedGoal(f"{g!r} is not a goal")
                k = g.key
                if k is K_CONJ:
                    state = (SOLVE, g.args[0], cert.tensor_left(), (F_CONJ, g.args[1], cert, cont))
                elif k is K_TRUE:
                    state = (RET, cert.axiom(), None, cont)
                elif k in builtins:
                    mark = len(trail)
                    if builtins[k](g.args, trail, oc):
                        state = (RET, cert.axiom(), None, cont)
                    else:
                        undo(trail, mark)
                        state = None
                else:
                    mark = len(trail)
                    it = alternatives(g, cert, cont, mark)
                    state = next(it, None)
                    if state is not None:
                        stack.append((mark, it))
                continue
            if cont is None:
                yield {n: resolve(v) for n, v in query_vars.items()}, x
                state = None
                continue
            if cont[0] == F_CONJ:
                _, g2, c0, nxt = cont
                state = (SOLVE, g2, c0.tensor_right(x), nxt)
            else:
                _, c0, nxt = cont
                state = (RET, c0.after_unfold(x), None, nxt)
    finally:
        st.steps += steps
        undo(trail, base)


def vsolve_first(program, goal, cert, **kw):
    gen = vsolve(program, goal, cert, **kw)
    try:
        return next(gen, None)
    finally:
        gen.close()
