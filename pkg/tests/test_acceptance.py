"""Acceptance criteria 1-9, each at its stated tolerance.

Every test records a one-line verdict that the terminal summary prints
(see conftest.py). Criterion 4-6 run the full-size experiments and take
several minutes on one core.
"""

import inspect
import random
import time

import oracles
import pytest
import test_kernel
from conftest import ACCEPTANCE

from linpbt import corpus, harness
from linpbt.fpc import RULES, Height, Pair, Size
from linpbt.kernel import ProofState, provable_closed, prove
from linpbt.pbt import Counterexample, Exhaustive, Randomized, replay, run_property
from linpbt.speclang.goals import ResourceContext
from linpbt.speclang.parser import parse_term
from linpbt.speclang.printer import pretty
from linpbt.speclang.program import parse_program
from linpbt.terms import mk, resolve
from linpbt.vanilla import vsolve

LJF_SHOW = corpus.PRINTERS["ljf"]
NAMED_FORMULA = "a => ((a => (a => b)) => b)"


def record(n, ok, detail):
    ACCEPTANCE[n] = (bool(ok), detail)
    assert ok, detail


# ---- 1 -----------------------------------------------------------------------------


def ljf_counterexamples(n):
    prog = corpus.load_spec("ljf")
    out = []
    for sol in prove(ProofState(prog, Height(n)), parse_term("form(F)")):
        f = sol.bindings["F"]
        if provable_closed(prog, [], mk("pv", f), Height(n)) and \
                not provable_closed(prog, [], mk("pvb", f), Height(n)):
            out.append(pretty(f, LJF_SHOW))
    return out


def test_c1_ljf_counterexample():
    p = corpus.get_property("ljf_sound", "ljf")
    t0 = time.perf_counter()
    res = run_property(p, Exhaustive([Height(4)]))
    elapsed = time.perf_counter() - t0
    found = isinstance(res, Counterexample)
    first = res.report.pretty["F"] if found else None
    replays = found and replay(res.report, p)
    cexs = ljf_counterexamples(4)
    among = NAMED_FORMULA in cexs
    record(1, found and elapsed < 10 and replays and first in cexs and among,
           f"first cex {first!r} in {elapsed:.2f}s (replay {replays}); "
           f"{len(cexs)} cex at height 4; named formula among them: {among}")


def test_c1_diagnostic_named_formula_at_height_5():
    # not a criterion: the formula is a counterexample one bound later
    prog = corpus.load_spec("ljf")
    f = parse_term("imp(a, imp(imp(a, imp(a, b)), b))")
    assert pretty(f, LJF_SHOW) == NAMED_FORMULA
    assert not provable_closed(prog, [], mk("form", f), Height(4))
    assert provable_closed(prog, [], mk("form", f), Height(5))
    assert provable_closed(prog, [], mk("pv", f), Height(5))
    assert not provable_closed(prog, [], mk("pvb", f), Height(5))


# ---- 2 -----------------------------------------------------------------------------


def test_c2_pv_decision_procedure():
    prog = corpus.load_spec("ljf")
    fs = oracles.formulas(3)
    t0 = time.perf_counter()
    bad = [f for f in fs if provable_closed(prog, [], mk("pv", oracles.to_term(f)), Height(10))
           != oracles.ljt_provable(f)]
    elapsed = time.perf_counter() - t0
    record(2, len(fs) >= 1000 and not bad and elapsed < 60,
           f"{len(fs) - len(bad)}/{len(fs)} formulas agree in {elapsed:.1f}s"
           + (f"; first disagreement {oracles.show(bad[0])}" if bad else ""))


# ---- 3 -----------------------------------------------------------------------------


def test_c3_io_oracle_equivalence():
    rng = random.Random(20240601)
    agree = positive = 0
    for _ in range(500):
        goal, linear, persistent, program = oracles.random_instance(rng)
        prog = parse_program(oracles.io_program_text(program))
        ctx = ResourceContext.of([mk(a) for a in linear], [mk(a) for a in persistent])
        ref = oracles.io_provable(goal, linear, persistent, program, 4)
        positive += ref
        agree += provable_closed(prog, ctx, oracles.io_term(goal), Height(4)) == ref
    record(3, agree == 500, f"{agree}/500 instances agree ({positive} provable)")


# ---- 4 -----------------------------------------------------------------------------

EXPECTED_KILLS = {("M2", "dtx"), ("M2", "eq"), ("M4", "srx"), ("M4", "srv"), ("M6", "dtx"), ("M6", "eq")}
# additional kills explained in the project notes: both mutants leave typed
# programs stuck, which the progress property sees directly
DOCUMENTED_EXTRA = {("M1", "pr"), ("M4", "pr")}


@pytest.fixture(scope="module")
def matrix():
    return harness.run_matrix()


def test_c4_mutation_matrix(matrix):
    kills = {(r, c) for r, cs in matrix.kills().items() for c in cs}
    missing = EXPECTED_KILLS - kills
    extra = kills - EXPECTED_KILLS
    m2 = matrix.cell("M2", "dtx").cex
    record(4, not missing and extra <= DOCUMENTED_EXTRA and " - " in m2 and m2.startswith("w := "),
           f"kills {sorted(kills)}; missing {sorted(missing)}; extra {sorted(extra)}; M2 cex {m2!r}")


def test_c4_killed_cells_replay(matrix):
    for (row, col), report in matrix.reports.items():
        progs = corpus.programs_for("imp_linear")
        progs["linear"] = corpus.apply_mutant(progs["linear"], row)
        assert replay(report, corpus.properties("imp_linear", progs, [col])[0])


# ---- 5 -----------------------------------------------------------------------------

EXPECTED_MBT = {"M1": ("found", "pass"), "M2": ("pass", "found"), "M6": ("pass", "found"),
        "M8": ("found", "pass"), "M9": ("found", "pass")}


def test_c5_model_based_testing():
    rep = harness.run_mbt()
    ms = corpus.mutants()
    problems = []
    slowest = 0.0
    for m in ms:
        cols = harness.mbt_columns(ms[m])
        cells = [rep.cell(m, c) for c in cols]
        if not any(c.killed for c in cells):
            problems.append(f"{m} survives")
        for c in cells:
            if c.killed:
                slowest = max(slowest, c.time)
        want = EXPECTED_MBT.get(m)
        got = tuple("found" if c.killed else "pass" for c in cells)
        if want and got != want:
            problems.append(f"{m} {got} != {want}")
    record(5, not problems and slowest < 5,
           f"slowest kill {slowest:.2f}s" + ("; " + "; ".join(problems) if problems else
                                              "; all mutants killed, expected rows match"))


# ---- 6 -----------------------------------------------------------------------------


def test_c6_performance_ratio():
    best = None
    lines = []
    for n in range(4, 8):
        rows = {r.engine: r for r in harness.bench("eq", sizes=[n], runs=3)}
        lin, van = rows["linear"].mean, rows["vanilla"].mean
        lines.append(f"n={n} {lin:.2f}/{van:.2f}s")
        if van > 60:
            break
        best = (n, lin, van)
        if lin > 300:
            break
    n, lin, van = best
    record(6, lin <= 5 * van,
           f"size {n}: linear {lin:.2f}s vs vanilla {van:.2f}s, ratio {lin / van:.2f} ({'; '.join(lines)})")


# ---- 7 -----------------------------------------------------------------------------


def generated_counts(sizes):
    van = corpus.load_spec("imp_vanilla")
    out = []
    for n in sizes:
        seen = set()
        for b, _ in vsolve(van, parse_term("tycmd(P)", dialect="vanilla"), Pair(Size(n), Height(n))):
            seen.add(pretty(resolve(b["P"])))
        out.append(len(seen))
    return out


def test_c7_generation_statistics():
    sizes = range(1, 8)
    a = generated_counts(sizes)
    b = generated_counts(sizes)
    mono = all(x <= y for x, y in zip(a, a[1:]))
    record(7, mono and 100 <= a[3] <= 2000 and a == b,
           f"counts {a}; size 4 -> {a[3]}; reproducible {a == b}")


# ---- 8 -----------------------------------------------------------------------------


def test_c8_randomized_reproducible():
    runs = []
    for _ in range(3):
        rep = harness.run_matrix(strategy=Randomized(trials=25, seed=1234))
        runs.append(rep.to_csv(timing=False).encode("utf-8"))
    same = runs[0] == runs[1] == runs[2]
    kills = runs[0].count(b",killed,")
    record(8, same, f"3 runs byte-equal: {same} ({len(runs[0])} bytes, {kills} killed cells)")


# ---- 9 -----------------------------------------------------------------------------

RULE_TESTS = {
    "with": "with", "one": "one", "tensor": "tensor", "erase": "erase", "lolli": "lolli",
    "bang": "bang", "init": "init_linear", "bang-init": "init_persistent", "unfold": "unfold",
}


def test_c9_kernel_rule_suite():
    tests = dict(inspect.getmembers(test_kernel, inspect.isfunction))
    missing, failed, ran = [], [], 0
    for rule in RULES:
        stem = RULE_TESTS[rule]
        for polarity in ("positive", "negative"):
            cases = [f for name, f in tests.items()
                     if name.startswith(f"test_{stem}_{polarity}")]
            if not cases:
                missing.append(f"{rule}/{polarity}")
            for f in cases:
                ran += 1
                try:
                    f()
                except AssertionError as e:
                    failed.append(f"{f.__name__}: {e}")
    record(9, not missing and not failed,
           f"{ran} rule cases over {len(RULES)} rules; missing {missing}; failed {failed}")
