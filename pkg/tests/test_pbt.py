import pytest

from linpbt import corpus
from linpbt.errors import ConfigurationError, ReplayMismatch
from linpbt.fpc import Height, Random
from linpbt.harness import parse_schedule
from linpbt.pbt import (
    Counterexample,
    Exhaustive,
    Pass,
    Randomized,
    deepening,
    property_from_decl,
    replay,
    run_property,
)
from linpbt.speclang.program import parse_program

LJF_TEXT = (corpus.corpus_dir() / "ljf.lli").read_text()


def ljf_prop(text=LJF_TEXT, name="ljf_sound"):
    prog = parse_program(text)
    decl = next(d for d in prog.props if d.name == name)
    return property_from_decl(decl, {"linear": prog}, corpus.PRINTERS["ljf"])


def test_ljf_counterexample_and_replay():
    p = ljf_prop()
    res = run_property(p, Exhaustive(parse_schedule("height:1..4")))
    assert isinstance(res, Counterexample)
    rep = res.report
    assert rep.cert == "height:4"
    assert rep.pretty["F"] == "((a => a) => b) => b"
    assert rep.stats.generated > 0 and rep.stats.tested <= rep.stats.generated
    assert replay(rep, p)


def test_replay_after_fix_is_false():
    p = ljf_prop()
    rep = run_property(p, Exhaustive(parse_schedule("height:1..4"))).report
    fixed = LJF_TEXT.replace("conclude pvb(F)", "conclude pv(F)")
    assert replay(rep, ljf_prop(fixed)) is False


def test_replay_wrong_property():
    p = ljf_prop()
    rep = run_property(p, Exhaustive(parse_schedule("height:1..4"))).report
    other = ljf_prop(LJF_TEXT + "\nprop other:\n  gen form(F) @ height:2;\n  conclude pv(F).\n", "other")
    with pytest.raises(ReplayMismatch):
        replay(rep, other)


def test_replay_stale_program():
    p = ljf_prop()
    rep = run_property(p, Exhaustive(parse_schedule("height:1..4"))).report
    stale = ljf_prop(LJF_TEXT.replace("pvb_imp", "pvb_imp2"))
    with pytest.raises(ReplayMismatch):
        replay(rep, stale)


def test_vacuous_property_passes():
    text = LJF_TEXT + "\nprop same:\n  gen form(F) @ height:3;\n  pre pv(F) @ height:4;\n  conclude pv(F) @ height:4.\n"
    assert isinstance(run_property(ljf_prop(text, "same")), Pass)


def test_forbid_stage():
    text = LJF_TEXT + "\nprop noa:\n  gen form(F) @ height:2;\n  forbid pv(F) @ height:4.\n"
    res = run_property(ljf_prop(text, "noa"))
    assert isinstance(res, Counterexample)
    assert res.report.pretty["F"] == "a => a"


def test_nonground_conclusion_rejected():
    text = LJF_TEXT + "\nprop loose:\n  gen form(F) @ height:2;\n  conclude pv(imp(F, G)) @ height:4.\n"
    with pytest.raises(ConfigurationError, match="G"):
        run_property(ljf_prop(text, "loose"))


def test_decl_errors():
    text = LJF_TEXT + "\nprop bad:\n  gen form(F) @ height:2 using nowhere;\n  conclude pv(F).\n"
    with pytest.raises(ConfigurationError):
        ljf_prop(text, "bad")


def test_default_test_cert():
    text = LJF_TEXT + "\nprop d:\n  gen form(F) @ height:3;\n  conclude pv(F).\n"
    assert ljf_prop(text, "d").conclusion.cert == Height(12)


def test_schedule_minimality():
    p = ljf_prop()
    res = run_property(p, Exhaustive(parse_schedule("height:1..4")))
    for k in range(1, 4):
        assert isinstance(run_property(p, Exhaustive([Height(k)])), Pass)
    assert res.report.stats.per_bound[-1][0] == "height:4"


def test_deepening():
    assert deepening(Height(3)) == [Height(1), Height(2), Height(3)]


def test_exhaustive_deterministic():
    p = ljf_prop()
    a = run_property(p, Exhaustive(parse_schedule("height:1..4"))).report
    b = run_property(p, Exhaustive(parse_schedule("height:1..4"))).report
    assert (a.witness, a.stats.generated, a.stats.tested) == (b.witness, b.stats.generated, b.stats.tested)


def test_randomized_reproducible():
    p = ljf_prop()
    s = Randomized(trials=300, seed=4, cert=Random(4, guard=5))
    r1, r2 = run_property(p, s), run_property(p, s)
    assert type(r1) is type(r2)
    if isinstance(r1, Counterexample):
        assert r1.report.witness == r2.report.witness and r1.report.trial == r2.report.trial
        assert replay(r1.report, p)
    assert r1.stats.generated == r2.stats.generated


def test_randomized_trials_validated():
    with pytest.raises(ConfigurationError):
        Randomized(trials=0)
