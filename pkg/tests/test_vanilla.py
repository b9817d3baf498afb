import pytest

from linpbt import corpus
from linpbt.errors import Floundering
from linpbt.fpc import Height, Size
from linpbt.speclang.parser import parse_term
from linpbt.speclang.printer import pretty
from linpbt.speclang.program import parse_program
from linpbt.terms import Var
from linpbt.vanilla import vsolve, vsolve_first

VIMP = corpus.load_spec("imp_vanilla")
SHOW = corpus.PRINTERS["imp_vanilla"]


def run(text, prog=VIMP, cert=Height(20)):
    return [(b, r) for b, r in vsolve(prog, parse_term(text, dialect=prog.dialect), cert)]


def test_vexec_assignment():
    ((b, _),) = run("vexec(asn(w, minus(i(0), i(1))), [var(w, vi(0))], S)")
    assert pretty(b["S"], SHOW) == "[w = -1]"


def test_size_residual():
    prog = parse_program("p <- true.\n", dialect="vanilla")
    ((_, r),) = run("p", prog, Size(1))
    assert r == Size(0)


def test_height_zero_empty():
    assert run("vexec(skip, [], S)", cert=Height(0)) == []


def test_conjunction_backtracks():
    prog = parse_program("c(1).\nc(2).\nd(2).\n", dialect="vanilla")
    got = [b["X"] for b, _ in run("c(X), d(X)", prog, Height(2))]
    assert got == [2]


def test_builtins_shared():
    ((b, _),) = run("sum(2, 3, X)", parse_program("", dialect="vanilla"), Height(0))
    assert b["X"] == 5


def test_floundering():
    with pytest.raises(Floundering):
        list(vsolve(VIMP, Var("G"), Height(3)))


def test_first_and_monotone():
    goal = "vmain(seq(asn(w, i(2)), asn(w, plus(v(w), v(w)))), S)"
    assert vsolve_first(VIMP, parse_term(goal, dialect="vanilla"), Height(3)) is None
    hits = [bool(run(goal, cert=Height(n))) for n in range(0, 16)]
    assert hits == sorted(hits) and hits[-1]


def test_vanilla_agrees_with_linear_on_sample():
    lin = corpus.load_spec("imp_linear")
    from linpbt.kernel import solve_closed
    from linpbt.speclang.goals import ResourceContext, Slot

    sigma0 = ResourceContext(Slot(t, p) for t, p in lin.contexts["sigma0"])
    for cmd in ["asn(x, neg(v(x)))", "ite(v(y), skip, asn(w, i(3)))",
                "while(neg(eq(v(w), i(2))), asn(w, plus(v(w), i(1))))"]:
        v = vsolve_first(VIMP, parse_term(f"vmain({cmd}, S)", dialect="vanilla"), Height(40))
        s = solve_closed(lin, sigma0, parse_term(f"exec({cmd}, S)"), Height(60))
        assert pretty(v[0]["S"], SHOW) == pretty(s.bindings["S"], SHOW)
