"""Time the compiled kernels against the no-JIT path.

Each backend runs in its own interpreter because KKSHADOW_NO_JIT is read at
import time.  Usage::

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

CASES = [
    ("scan", 6, 2, 3, 2),
    ("scan", 7, 2, 3, 2),
    ("search", 7, 2, 3, 2),
    ("search", 8, 2, 3, 2),
    ("search", 6, 3, 4, 3),
]

WORKER = r"""
import json, sys, time
from kkshadow import _accel
from kkshadow.hypergraph import Parameters
from kkshadow.search.engine import enumerate_extremal, exhaustive_oracle
kind, n, t, k, ell, repeat = json.loads(sys.argv[1])
params = Parameters(n, t, k, ell)
job = (lambda: exhaustive_oracle(params)[0]) if kind == "scan" else (lambda: enumerate_extremal(params).optimum)
value = job()  # warm-up; includes compilation or cache load
times = []
for _ in range(repeat):
    t0 = time.perf_counter()
    job()
    times.append(time.perf_counter() - t0)
print(json.dumps({"backend": _accel.backend_name(), "value": value, "best_s": min(times)}))
"""


def run_case(case, repeat, no_jit):
    env = dict(os.environ, KKSHADOW_NO_JIT="1" if no_jit else "0")
    out = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps([*case, repeat])],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args()

    rows = []
    print(f"{'case':22s} {'numba s':>10s} {'no-jit s':>10s} {'speedup':>8s}")
    for case in CASES:
        fast = run_case(case, args.repeat, no_jit=False)
        slow = run_case(case, args.repeat, no_jit=True)
        if fast["value"] != slow["value"]:
            raise SystemExit(f"backends disagree on {case}: {fast['value']} vs {slow['value']}")
        label = "{} n={} t={} k={} l={}".format(*case)
        speed = slow["best_s"] / fast["best_s"] if fast["best_s"] > 0 else float("inf")
        print(f"{label:22s} {fast['best_s']:10.4f} {slow['best_s']:10.4f} {speed:8.1f}x")
        rows.append({"case": list(case), "numba_s": fast["best_s"], "no_jit_s": slow["best_s"],
                     "value": fast["value"]})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
