import pytest

from linpbt import corpus
from linpbt.errors import MutantError
from linpbt.fpc import Height, Pair, Size
from linpbt.harness import parse_schedule
from linpbt.kernel import ProofState, provable_closed, prove, solve_closed
from linpbt.pbt import Counterexample, Exhaustive, Pass, run_property
from linpbt.speclang.goals import ResourceContext, Slot
from linpbt.speclang.parser import parse_term
from linpbt.speclang.printer import pretty
from linpbt.terms import Var, mk
from linpbt.vanilla import vsolve, vsolve_first

SHOW = corpus.PRINTERS["imp_linear"]
LIN = corpus.load_spec("imp_linear")
VAN = corpus.load_spec("imp_vanilla")
SIGMA0 = ResourceContext(Slot(t, p) for t, p in LIN.contexts["sigma0"])


def exec_state(prog, cmd, cert=Height(40)):
    s = solve_closed(prog, SIGMA0, parse_term(f"exec({cmd}, S)"), cert)
    return None if s is None else pretty(s.bindings["S"], SHOW)


def test_load_all_specs():
    for name in corpus.SPECS:
        assert len(corpus.load_spec(name)) > 0


def test_ljf_example():
    assert provable_closed(corpus.load_spec("ljf"), [], parse_term("pv(imp(a,a))"), Height(3))


def test_imp_main_example():
    ctx = ResourceContext.of([parse_term("var(w, vi(0))")])
    s = solve_closed(LIN, ctx, parse_term("main(asn(w, minus(i(0), i(1))), [w], S)"), Height(30))
    assert pretty(s.bindings["S"], SHOW) == "[w = -1]"


def test_sigma0():
    assert exec_state(LIN, "skip") == "[w = 0, x = tt, y = ff]"


def test_stack_machine_agrees_with_ceval():
    sm = corpus.load_spec("stack_machine")
    for cmd in ["asn(w, i(0))", "seq(asn(w, plus(v(w), i(2))), asn(x, eq(v(w), i(2))))",
                "while(neg(eq(v(w), i(2))), asn(w, plus(v(w), i(1))))"]:
        a = solve_closed(sm, SIGMA0, parse_term(f"exec({cmd}, S)"), Height(60))
        b = solve_closed(sm, SIGMA0, parse_term(f"compile({cmd}, Code) x mstate(Code, S)"),
                         Height(200))
        assert pretty(a.bindings["S"], SHOW) == pretty(b.bindings["S"], SHOW)
        assert provable_closed(sm, [], mk("wt_code", b.bindings["Code"]), Height(200))


# ---- mutants -----------------------------------------------------------------------


def test_registry():
    ms = corpus.mutants()
    assert list(ms) == [f"M{i}" for i in range(1, 10)]
    assert {m.judgment for m in ms.values()} <= {"eval", "exec", "type"}


def test_apply_revert_round_trip():
    for mid in corpus.mutants():
        m = corpus.apply_mutant(LIN, mid)
        assert m != LIN
        assert corpus.revert_mutant(m, mid) == LIN
    assert LIN == corpus.load_spec("imp_linear")


def test_apply_touches_only_named_clauses():
    m = corpus.apply_mutant(LIN, "M8")
    diff = [k for k in set(LIN.preds) | set(m.preds) if LIN.preds.get(k) != m.preds.get(k)]
    assert diff == [("tyexp", 2)]


def test_mutant_errors():
    with pytest.raises(MutantError):
        corpus.apply_mutant(LIN, "M42")
    with pytest.raises(MutantError):
        corpus.apply_mutant(corpus.load_spec("ljf"), "M1")
    with pytest.raises(MutantError):
        corpus.revert_mutant(LIN, "M1")


def test_m2_two_values():
    m2 = corpus.apply_mutant(LIN, "M2")
    st = ProofState(m2, Height(6), SIGMA0)
    vals = [pretty(s.bindings["V"]) for s in
            prove(st, parse_term("eval(minus(i(0), i(1)), V, erase)"))]
    assert {"vi(-1)", "vi(1)"} <= set(vals)


def test_m6_swaps_branches():
    m6 = corpus.apply_mutant(LIN, "M6")
    cmd = "ite(eq(v(x), v(x)), asn(w, i(0)), asn(w, i(1)))"
    assert exec_state(LIN, cmd) == "[w = 0, x = tt, y = ff]"
    from linpbt.kernel import solutions_closed

    got = {pretty(s.bindings["S"], SHOW)
           for s in solutions_closed(m6, SIGMA0, parse_term(f"exec({cmd}, S)"), Height(40))}
    assert "[w = 1, x = tt, y = ff]" in got


# ---- properties --------------------------------------------------------------------


def test_properties_wired():
    props = {p.name: p for p in corpus.properties()}
    assert set(corpus.SUITE) <= set(props)
    eq = props["eq"]
    (gen,) = eq.generators
    assert deref_name(gen.goal) == "tycmd" and gen.engine == "vanilla"
    assert gen.cert == Pair(Size(7), Height(7))
    assert eq.conclusion.cert == Height(28)


def deref_name(t):
    from linpbt.terms import deref

    return deref(t).name


def test_dtx_passes_small():
    p = corpus.get_property("dtx")
    assert isinstance(run_property(p, Exhaustive(parse_schedule("pair(size:4,height:4)"))), Pass)


def test_exec_lc_finds_m2():
    progs = corpus.programs_for("imp_linear")
    progs["linear"] = corpus.apply_mutant(progs["linear"], "M2")
    p = corpus.properties("imp_linear", progs, ["exec_lc"])[0]
    res = run_property(p)
    assert isinstance(res, Counterexample)
    assert res.report.pretty_text() == "w := 0 - 1"


# ---- spec-level invariants ---------------------------------------------------------


def expressions(n):
    out = []
    for b, _ in vsolve(VAN, parse_term("tyexp(E, T)", dialect="vanilla"), Pair(Size(n), Height(n))):
        out.append(b["E"])
    return out


def test_adequacy_of_cps_eval():
    es = expressions(4)
    assert len(es) > 100
    for e in es:
        v = vsolve_first(VAN, mk("init_state", Var("S0")), Height(2))
        s0 = v[0]["S0"]
        ref = vsolve_first(VAN, mk("veval", e, s0, Var("V")), Height(30))
        st = ProofState(LIN, Height(30), SIGMA0)
        got = [s.bindings["V"] for s in prove(st, mk("eval", e, Var("V"), mk("erase")))
               if s.context.all_linear_consumed()]
        if ref is None:
            assert got == []
        else:
            assert got and all(g == ref[0]["V"] for g in got)


def test_state_restoration():
    for e in expressions(3)[:60]:
        goal = mk("eval", e, Var("V"), parse_term("collect([w, x, y], S)"))
        s = solve_closed(LIN, SIGMA0, goal, Height(30))
        if s is not None:
            assert pretty(s.bindings["S"], SHOW) == "[w = 0, x = tt, y = ff]"


def test_assignment_changes_one_variable():
    assert exec_state(LIN, "asn(x, b(ff))") == "[w = 0, x = ff, y = ff]"
    assert exec_state(LIN, "asn(w, times(i(3), i(2)))") == "[w = 6, x = tt, y = ff]"


def test_pool_configurable():
    pool = corpus.Pool(variables=(("w", "tint", "vi(0)"), ("x", "tbool", "vb(tt)"),
                                  ("z", "tint", "vi(0)")))
    prog = corpus.load_spec("imp_linear", pool)
    ctx = ResourceContext(Slot(t, p) for t, p in prog.contexts["sigma0"])
    s = solve_closed(prog, ctx, parse_term("exec(asn(z, i(4)), S)"), Height(40))
    assert pretty(s.bindings["S"], SHOW) == "[w = 0, x = tt, z = 4]"
