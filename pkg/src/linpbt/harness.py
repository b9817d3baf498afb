"""Mutation matrices, model-based testing runs and the timing benchmark."""

import csv
import io
import json
import statistics
import time
from dataclasses import asdict, dataclass, field

from . import corpus
from .errors import ConfigurationError, MutantError
from .fpc import Pair, Size, parse_certificate
from .pbt import Counterexample, Exhaustive, GenCache, run_property

ORIGINAL = "orig"

PASS = "pass"
KILLED = "killed"
SKIP = "n/a"

# coverage budget for the benchmark: c * n**3 rule applications per stage
BENCH_C = 40


@dataclass
class Cell:
    status: str
    time: float = 0.0
    cex: str = ""
    witness: str = ""
    cert: str = ""
    generated: int = 0
    tested: int = 0

    @property
    def killed(self):
        return self.status == KILLED


@dataclass
class MatrixReport:
    rows: list
    columns: list
    cells: dict = field(default_factory=dict)
    reports: dict = field(default_factory=dict)

    def cell(self, row, col):
        return self.cells.get((row, col), Cell(SKIP))

    def kills(self):
        """``{row: [columns that killed it]}`` over the mutant rows."""
        return {r: [c for c in self.columns if self.cell(r, c).killed] for r in self.rows}

    # ---- renderings -------------------------------------------------------

    CSV_FIELDS = ("row", "column", "status", "time", "cex", "witness", "cert", "generated", "tested")

    def to_csv(self, timing=True):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_FIELDS if timing else [f for f in self.CSV_FIELDS if f != "time"])
        for r in self.rows:
            for c in self.columns:
                cell = self.cell(r, c)
                vals = [r, c, cell.status, repr(cell.time), cell.cex, cell.witness,
                        cell.cert, cell.generated, cell.tested]
                if not timing:
                    del vals[3]
                w.writerow(vals)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        rows, cols, cells = [], [], {}
        for rec in csv.DictReader(io.StringIO(text)):
            r, c = rec["row"], rec["column"]
            if r not in rows:
                rows.append(r)
            if c not in cols:
                cols.append(c)
            cells[(r, c)] = Cell(
                rec["status"], float(rec.get("time") or 0.0), rec["cex"], rec["witness"],
                rec["cert"], int(rec["generated"]), int(rec["tested"]),
            )
        return cls(rows, cols, cells)

    def to_json(self, timing=True):
        out = {"rows": self.rows, "columns": self.columns, "cells": []}
        for r in self.rows:
            for c in self.columns:
                d = {"row": r, "column": c, **asdict(self.cell(r, c))}
                if not timing:
                    del d["time"]
                out["cells"].append(d)
        return json.dumps(out, indent=2, ensure_ascii=False)

    def to_table(self, timing=True):
        def show(cell):
            if cell.status == PASS:
                s = "pass"
            elif cell.status == KILLED:
                s = "found"
            else:
                return cell.status
            return f"{s} in {cell.time:.2f}" if timing else s

        header = [""] + list(self.columns) + ["cex"]
        lines = []
        for r in self.rows:
            cex = next((self.cell(r, c).cex for c in self.columns if self.cell(r, c).killed), "")
            lines.append([r] + [show(self.cell(r, c)) for c in self.columns] + [cex])
        widths = [max(len(x[i]) for x in [header] + lines) for i in range(len(header))]
        fmt = lambda row: "  ".join(s.ljust(widths[i]) for i, s in enumerate(row)).rstrip()
        return "\n".join([fmt(header), fmt(["-" * w for w in widths])] + [fmt(x) for x in lines]) + "\n"

    def render(self, fmt="table", timing=True):
        if fmt == "csv":
            return self.to_csv(timing)
        if fmt == "json":
            return self.to_json(timing) + "\n"
        return self.to_table(timing)


def _cell(result, elapsed):
    st = result.stats
    if isinstance(result, Counterexample):
        rep = result.report
        return Cell(KILLED, elapsed, rep.pretty_text(), "; ".join(rep.witness.values()),
                    rep.cert, st.generated, st.tested)
    return Cell(PASS, elapsed, generated=st.generated, tested=st.tested)


def run_matrix(spec="imp_linear", props=None, mutant_ids=None, strategy=None,
               include_original=True, columns_for=None, budget=None, cache=None, pool=None,
               progress=None):
    """Run every ``(row, property)`` pair.

    Rows are the unmutated spec (``orig``) and the mutants. Mutants replace
    the linear program only; generators and reference judgments running on
    the vanilla engine stay trusted. ``columns_for(mutant)`` restricts the
    properties applied to a row (other cells are ``n/a``).
    """
    props = list(corpus.SUITE if props is None else props)
    registry = corpus.mutants()
    if mutant_ids is None:
        mutant_ids = [m for m in registry if registry[m].spec in (spec, *corpus._BASES.get(spec, ()))]
    for m in mutant_ids:
        if m not in registry:
            raise MutantError(f"unknown mutant {m!r}")
    base = corpus.programs_for(spec, pool)
    cache = cache if cache is not None else GenCache()
    rows = ([ORIGINAL] if include_original else []) + list(mutant_ids)
    report = MatrixReport(rows, props)
    if not props:
        return report
    for row in rows:
        progs = dict(base)
        if row != ORIGINAL:
            progs["linear"] = corpus.apply_mutant(base["linear"], row)
        wanted = props if columns_for is None or row == ORIGINAL else columns_for(registry[row])
        for prop in corpus.properties(spec, progs, [p for p in props if p in wanted]):
            t0 = time.perf_counter()
            result = run_property(prop, strategy, budget=budget, cache=cache)
            cell = _cell(result, time.perf_counter() - t0)
            report.cells[(row, prop.name)] = cell
            if isinstance(result, Counterexample):
                report.reports[(row, prop.name)] = result.report
            if progress:
                progress(row, prop.name, cell)
    return report


def mbt_columns(mutant):
    return corpus.MBT[corpus.MBT_FOR[mutant.judgment]]


def run_mbt(spec="imp_linear", mutant_ids=None, strategy=None, include_original=True, **kw):
    """Model-based testing: each mutant against the pair covering its judgment."""
    cols = [c for pair in corpus.MBT.values() for c in pair]
    return run_matrix(spec, cols, mutant_ids, strategy, include_original,
                      columns_for=mbt_columns, **kw)


# ---- benchmark ----------------------------------------------------------------


@dataclass
class BenchRow:
    engine: str
    size: int
    times: list
    generated: int
    reached: int
    diverged: int
    budget: int

    @property
    def mean(self):
        return statistics.fmean(self.times)

    @property
    def coverage(self):
        return self.reached / self.generated if self.generated else 0.0


def _bench_prop(name, engine, pool=None):
    spec = "imp_vanilla" if engine == "vanilla" else "imp_linear"
    progs = corpus.programs_for(spec, pool)
    primary = progs.get("linear") or progs["vanilla"]
    names = {d.name for d in primary.props}
    for cand in (f"{name}_bench", name):
        if cand in names:
            return corpus.properties(spec, progs, [cand])[0]
    raise ConfigurationError(f"no benchmark property {name!r} for engine {engine}")


def bench(prop="eq", engines=("linear", "vanilla"), sizes=range(4, 8), runs=5, c=BENCH_C,
          pool=None, progress=None):
    """Time ``prop`` at generation bound ``size:n`` (paired with its height).

    Every run generates afresh (no cache). ``generated`` is the number of
    distinct data at the bound; ``reached`` counts those whose
    preconditions completed within ``c * n**3`` rule applications per stage.
    """
    out = []
    for n in sizes:
        for engine in engines:
            p = _bench_prop(prop, engine, pool)
            gen = p.generators[0]
            cert = _with_size(gen.cert, n)
            budget = c * n ** 3
            times = []
            res = None
            for _ in range(runs):
                t0 = time.perf_counter()
                res = run_property(p, Exhaustive([cert]), budget=budget)
                times.append(time.perf_counter() - t0)
            st = res.stats
            row = BenchRow(engine, n, times, st.generated, st.reached, st.diverged, budget)
            out.append(row)
            if progress:
                progress(row)
    return out


def _with_size(cert, n):
    if isinstance(cert, Pair):
        return Pair(_with_size(cert.left, n), _with_size(cert.right, n))
    if isinstance(cert, Size):
        return Size(n)
    if hasattr(cert, "n"):
        return type(cert)(n)
    return cert


def bench_table(rows, fmt="table"):
    recs = [
        {"engine": r.engine, "size": r.size, "mean": r.mean, "runs": len(r.times),
         "generated": r.generated, "coverage": r.coverage, "budget": r.budget}
        for r in rows
    ]
    if fmt == "json":
        return json.dumps(recs, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(recs[0]) if recs else ["engine"], lineterminator="\n")
        w.writeheader()
        w.writerows(recs)
        return buf.getvalue()
    lines = [f"{'size':>4}  {'engine':<8} {'mean s':>8} {'runs':>4} {'generated':>9} {'coverage':>8}"]
    for r in recs:
        lines.append(f"{r['size']:>4}  {r['engine']:<8} {r['mean']:>8.3f} {r['runs']:>4} "
                     f"{r['generated']:>9} {r['coverage']:>8.0%}")
    return "\n".join(lines) + "\n"


def parse_schedule(text):
    """``size:1..7`` style ranges or comma-separated certificate literals."""
    if ".." in text:
        head, _, hi = text.rpartition("..")
        kind, _, lo = head.partition(":")
        return [parse_certificate(f"{kind}:{k}") for k in range(int(lo), int(hi) + 1)]
    return [parse_certificate(t) for t in _split_top(text)]


def _split_top(text):
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == ";" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur:
        parts.append(cur)
    return parts


__all__ = [
    "Cell", "MatrixReport", "run_matrix", "run_mbt", "mbt_columns", "bench", "BenchRow",
    "bench_table", "parse_schedule", "ORIGINAL", "PASS", "KILLED", "SKIP", "BENCH_C",
]
