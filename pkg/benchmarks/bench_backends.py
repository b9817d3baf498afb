"""Compare the compiled core against the pure-Python fallback.

Each backend runs in its own interpreter (the choice is made at import):

    python benchmarks/bench_backends.py [--runs 3] [--size 5]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
from linpbt import corpus, kernel
from linpbt.harness import parse_schedule
from linpbt.pbt import Exhaustive, run_property

size = int(sys.argv[1])
out = {"backend": kernel.BACKEND}
t0 = time.perf_counter()
run_property(corpus.get_property("ljf_sound", "ljf"), Exhaustive(parse_schedule("height:1..4")))
out["ljf_sound h4"] = time.perf_counter() - t0
p = corpus.get_property("eq", "imp_linear")
t0 = time.perf_counter()
res = run_property(p, Exhaustive(parse_schedule(f"pair(size:{size},height:{size})")))
out[f"eq size {size}"] = time.perf_counter() - t0
print(json.dumps(out))
"""


def run_once(pure, size):
    env = dict(os.environ)
    env.pop("LINPBT_PURE", None)
    if pure:
        env["LINPBT_PURE"] = "1"
    proc = subprocess.run([sys.executable, "-c", WORKLOAD, str(size)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--runs", type=int, default=3)
    ap.add_argument("--size", type=int, default=5)
    args = ap.parse_args(argv)

    results = {}
    for pure in (False, True):
        samples = [run_once(pure, args.size) for _ in range(args.runs)]
        backend = samples[0].pop("backend")
        for s in samples[1:]:
            s.pop("backend")
        results[backend] = {k: statistics.fmean(s[k] for s in samples) for k in samples[0]}

    if len(results) < 2:
        print("compiled extension not built; only", ", ".join(results), "available")
    tasks = list(next(iter(results.values())))
    print(f"{'task':<16}" + "".join(f"{b:>12}" for b in results) + f"{'speedup':>10}")
    for t in tasks:
        row = [results[b][t] for b in results]
        speed = f"{results['python'][t] / results['cython'][t]:>9.2f}x" if len(results) == 2 else ""
        print(f"{t:<16}" + "".join(f"{x:>11.2f}s" for x in row) + speed)


if __name__ == "__main__":
    main()
