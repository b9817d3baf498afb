"""Command-line front end.

Exit codes: 0 all passed or solutions found, 1 counterexample found or no
solution, 2 usage, parse or configuration error.
"""

import argparse
import json
import sys
from dataclasses import asdict

from . import corpus, harness
from .errors import LinpbtError, StepBudgetExceeded
from .fpc import Pair, Random, parse_certificate
from .kernel import ProofState, prove
from .pbt import Counterexample, Exhaustive, Randomized, deepening, replay, run_property
from .speclang.goals import ResourceContext, Slot
from .speclang.parser import parse_context, parse_term
from .speclang.printer import pretty
from .vanilla import VanillaState
from .vanilla import run as vrun

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--spec", default=argparse.SUPPRESS, choices=corpus.SPECS,
                   help="bundled specification (default depends on the command)")
    p.add_argument("--cert", default=argparse.SUPPRESS, help="certificate literal, e.g. height:4")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")
    p.add_argument("--engine", choices=("linear", "vanilla"), default=argparse.SUPPRESS)
    p.add_argument("--format", choices=("table", "csv", "json"), default=argparse.SUPPRESS)
    p.add_argument("--trace", action="store_true", default=argparse.SUPPRESS,
                   help="print one line per rule application to stderr")
    p.add_argument("--max", type=int, default=argparse.SUPPRESS, help="cap on enumerated solutions")
    return p


DEFAULTS = {"cert": None, "seed": None, "engine": None, "format": "table",
            "trace": False, "max": None}


def build_parser():
    common = _common()
    ap = _Parser(prog="linpbt", parents=[common],
                 description="Property-based testing of linear logic specifications.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("prove", parents=[common], help="run a query against a spec")
    p.add_argument("--goal", required=True)
    p.add_argument("--context", default="", help="initial context, e.g. 'a, bang b'")
    p.add_argument("--closed", action="store_true", help="only proofs consuming the whole context")

    p = sub.add_parser("check", parents=[common], help="test one property")
    p.add_argument("--prop", required=True)
    p.add_argument("--mutant", help="apply this mutant to the linear program first")
    p.add_argument("--trials", type=int, help="randomized strategy with this many trials")
    p.add_argument("--schedule", help="exhaustive bound schedule, e.g. 'height:1..4'")
    p.add_argument("--budget", type=int, help="rule applications per test stage")
    p.add_argument("--save", help="write the counterexample report to this JSON file")
    p.add_argument("--replay", help="replay a saved report instead of searching")

    p = sub.add_parser("mutants", parents=[common], help="mutation matrix")
    p.add_argument("--props", help="comma-separated properties (default: the IMP suite)")
    p.add_argument("--mbt", action="store_true", help="model-based testing pairs instead")
    p.add_argument("--mutants", dest="ids", help="comma-separated mutant ids (default: all)")
    p.add_argument("--trials", type=int, help="randomized strategy with this many trials")
    p.add_argument("--no-orig", action="store_true", help="omit the unmutated row")
    p.add_argument("--no-timing", action="store_true", help="leave timings out of the output")

    p = sub.add_parser("bench", parents=[common], help="linear vs vanilla timing")
    p.add_argument("--prop", default="eq")
    p.add_argument("--sizes", default="4..7", help="size bounds, 'lo..hi' or comma list")
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--engines", default="linear,vanilla")
    p.add_argument("--c", type=int, default=harness.BENCH_C, help="budget constant: c*n^3 steps")
    return ap


def _opts(args):
    out = dict(DEFAULTS)
    out.update({k: v for k, v in vars(args).items()})
    return argparse.Namespace(**out)


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _opts(build_parser().parse_args(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.cmd](args, out, err)
    except StepBudgetExceeded as e:
        print(f"error: {e}", file=err)
        return EXIT_FOUND
    except LinpbtError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


# ---- prove -----------------------------------------------------------------------


def cmd_prove(a, out, err):
    spec = getattr(a, "spec", None) or "ljf"
    engine = a.engine or ("vanilla" if spec == "imp_vanilla" else "linear")
    prog = corpus.load_spec(spec)
    if engine == "vanilla" and prog.dialect != "vanilla":
        prog = corpus.load_spec("imp_vanilla")
    cert = parse_certificate(a.cert or "height:10", a.seed)
    varmap = {}
    goal = parse_term(a.goal, varmap, dialect=prog.dialect)
    printers = corpus.PRINTERS.get(spec)
    trace = (lambda line: print(line, file=err)) if a.trace else None
    names = [n for n in varmap if not n.startswith("_")]
    shown = 0
    rows = []
    if engine == "vanilla":
        if a.context:
            raise LinpbtError("the vanilla engine takes no context")
        st = VanillaState(prog, cert, trace=trace)
        sols = ((b, None) for b, _ in vrun(st, goal, {n: varmap[n] for n in names}))
    else:
        ctx = ResourceContext(Slot(t, p) for t, p in _context_items(a.context, prog, varmap))
        st = ProofState(prog, cert, ctx, trace=trace)
        lin = set(ctx.linear_indices())
        sols = ((s.bindings, s) for s in prove(st, goal, {n: varmap[n] for n in names})
                if not a.closed or lin <= set(s.consumed()))
    for bindings, sol in sols:
        rec = {n: pretty(t, printers, ids=False) for n, t in bindings.items()}
        if sol is not None:
            rec["consumed"] = sol.consumed()
        rows.append(rec)
        shown += 1
        if a.max is not None and shown >= a.max:
            break
    _print_solutions(rows, a.format, out)
    return EXIT_OK if rows else EXIT_FOUND


def _context_items(text, prog, varmap):
    text = text.strip()
    if not text:
        return []
    if text in prog.contexts:
        return prog.contexts[text]
    return parse_context(text, varmap)


def _print_solutions(rows, fmt, out):
    if fmt == "json":
        print(json.dumps(rows, indent=2, ensure_ascii=False), file=out)
        return
    if fmt == "csv":
        import csv

        keys = list(rows[0]) if rows else []
        w = csv.writer(out, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([r[k] for k in keys])
        return
    if not rows:
        print("no solution", file=out)
    for i, r in enumerate(rows, 1):
        parts = [f"{k} = {v}" for k, v in r.items() if k != "consumed"]
        if "consumed" in r:
            parts.append(f"consumed {list(r['consumed'])}")
        print(f"{i}. " + ("; ".join(parts) if parts else "yes"), file=out)


# ---- check -----------------------------------------------------------------------


def _strategy(a, prop):
    if getattr(a, "trials", None) or a.seed is not None and not getattr(a, "schedule", None):
        cert = None
        if a.cert:
            cert = parse_certificate(a.cert, a.seed)
            if not isinstance(cert, (Random, Pair)):
                cert = Pair(Random(a.seed or 0), cert)
        return Randomized(trials=a.trials or 100, seed=a.seed or 0, cert=cert)
    if getattr(a, "schedule", None):
        return Exhaustive(harness.parse_schedule(a.schedule))
    if a.cert:
        return Exhaustive(deepening(parse_certificate(a.cert)))
    return Exhaustive()


def _find_spec(name, spec):
    if spec:
        return spec
    for s in ("imp_linear", "ljf", "stack_machine"):
        progs = corpus.programs_for(s)
        if any(d.name == name for d in progs["linear"].props):
            return s
    raise LinpbtError(f"unknown property {name!r}")


def cmd_check(a, out, err):
    spec = _find_spec(a.prop, getattr(a, "spec", None))
    progs = corpus.programs_for(spec)
    if a.mutant:
        progs["linear"] = corpus.apply_mutant(progs["linear"], a.mutant)
    prop = corpus.properties(spec, progs, [a.prop])[0]
    if a.replay:
        with open(a.replay, encoding="utf-8") as f:
            rep = report_from_json(f.read())
        ok = replay(rep, prop)
        print(f"{prop.name}: replay {'violates' if ok else 'holds'} for {rep.pretty_text()}", file=out)
        return EXIT_FOUND if ok else EXIT_OK
    res = run_property(prop, _strategy(a, prop), budget=a.budget)
    st = res.stats
    if isinstance(res, Counterexample):
        rep = res.report
        if a.save:
            with open(a.save, "w", encoding="utf-8") as f:
                f.write(report_to_json(rep))
        if a.format == "json":
            print(report_to_json(rep), file=out)
        elif a.format == "csv":
            print("prop,status,cex,cert,generated,tested", file=out)
            print(f'{prop.name},killed,"{rep.pretty_text()}",{rep.cert},{st.generated},{st.tested}', file=out)
        else:
            print(f"{prop.name}: counterexample at {rep.cert} after {st.generated} candidates", file=out)
            for k, v in rep.pretty.items():
                print(f"  {k} = {v}", file=out)
            for k, v in rep.details.items():
                print(f"  ({k} = {v})", file=out)
        return EXIT_FOUND
    if a.format == "json":
        print(json.dumps({"prop": prop.name, "status": "pass", **asdict(st)}, indent=2), file=out)
    elif a.format == "csv":
        print("prop,status,cex,cert,generated,tested", file=out)
        print(f"{prop.name},pass,,,{st.generated},{st.tested}", file=out)
    else:
        print(f"{prop.name}: passed {st.tested} tests ({st.generated} generated, "
              f"{st.diverged} over budget) in {st.elapsed:.2f}s", file=out)
    return EXIT_OK


def report_to_json(rep):
    d = asdict(rep)
    return json.dumps(d, indent=2, ensure_ascii=False) + "\n"


def report_from_json(text):
    from .pbt import CexReport, Stats

    d = json.loads(text)
    st = d.pop("stats")
    st["per_bound"] = [tuple(x) for x in st.get("per_bound", [])]
    return CexReport(stats=Stats(**st), **d)


# ---- mutants / bench ---------------------------------------------------------------


def _csv_list(text):
    return [x.strip() for x in text.split(",") if x.strip()] if text is not None else None


def cmd_mutants(a, out, err):
    spec = getattr(a, "spec", None) or "imp_linear"
    ids = _csv_list(a.ids)
    strategy = None
    if a.trials or a.seed is not None:
        strategy = Randomized(trials=a.trials or 100, seed=a.seed or 0)
    elif a.cert:
        strategy = Exhaustive(deepening(parse_certificate(a.cert)))
    if a.mbt:
        rep = harness.run_mbt(spec, ids, strategy, include_original=not a.no_orig)
    else:
        props = _csv_list(a.props) if a.props is not None else None
        rep = harness.run_matrix(spec, props, ids, strategy, include_original=not a.no_orig)
    out.write(rep.render(a.format, timing=not a.no_timing))
    return EXIT_FOUND if any(c.killed for c in rep.cells.values()) else EXIT_OK


def _sizes(text):
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def cmd_bench(a, out, err):
    engines = _csv_list(a.engines)
    rows = harness.bench(a.prop, engines, _sizes(a.sizes), a.runs, a.c,
                         progress=lambda r: print(f"size {r.size} {r.engine}: {r.mean:.3f}s",
                                                  file=err))
    out.write(harness.bench_table(rows, a.format))
    return EXIT_OK


COMMANDS = {"prove": cmd_prove, "check": cmd_check, "mutants": cmd_mutants, "bench": cmd_bench}


if __name__ == "__main__":
    sys.exit(main())
