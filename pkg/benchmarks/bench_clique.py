"""Time the clique search with and without numba.

Each backend runs in its own interpreter because GDPERM_NO_NUMBA is read at
import time.  The numba column excludes compilation: one warm-up solve runs
before timing, and compiled kernels are cached on disk anyway.

    python3 benchmarks/bench_clique.py            # default instances
    python3 benchmarks/bench_clique.py --repeat 5 --quick
"""

import argparse
import json
import os
import subprocess
import sys

INSTANCES = {
    "kappa(P4+K1,5)": "kappa(C.p4_plus_k1(), 5)",
    "kappa(K_1,3,7)": "kappa(star(3), 7)",
    "kappa(2K2,6)": "kappa(matching(2), 6)",
    "rho(6)": "rho(6)",
}
QUICK = ["kappa(P4+K1,5)", "kappa(K_1,3,7)"]

CHILD = r"""
import json, sys, time
from gdperm import constructions as C
from gdperm._jit import HAVE_NUMBA
from gdperm.core import matching, star
from gdperm.solver import kappa, rho
exprs = json.loads(sys.argv[1])
repeat = int(sys.argv[2])
kappa(C.p4_plus_k1(), 5)  # warm-up
out = {"numba": HAVE_NUMBA, "rows": {}}
for name, expr in exprs.items():
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        r = eval(expr)
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    out["rows"][name] = {"value": r.value, "nodes": r.stats["nodes"], "seconds": best}
print(json.dumps(out))
"""


def run_backend(exprs, repeat, pure):
    env = dict(os.environ)
    env["GDPERM_NO_NUMBA"] = "1" if pure else "0"
    env.pop("KAPPA_THREADS", None)
    proc = subprocess.run([sys.executable, "-c", CHILD, json.dumps(exprs), str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="only the two smallest instances")
    parser.add_argument("--json", action="store_true", help="print raw results as JSON")
    args = parser.parse_args()

    names = QUICK if args.quick else list(INSTANCES)
    exprs = {k: INSTANCES[k] for k in names}
    fast = run_backend(exprs, args.repeat, pure=False)
    slow = run_backend(exprs, args.repeat, pure=True)
    if not fast["numba"]:
        print("warning: numba unavailable, both columns are the pure path", file=sys.stderr)

    if args.json:
        print(json.dumps({"numba": fast, "pure": slow}, indent=1))
        return 0
    print(f"{'instance':<16} {'value':>6} {'nodes':>7} {'numba s':>10} {'pure s':>10} {'speedup':>8}")
    for name in names:
        a, b = fast["rows"][name], slow["rows"][name]
        if a["value"] != b["value"]:
            print(f"{name}: backends disagree ({a['value']} vs {b['value']})", file=sys.stderr)
            return 1
        speedup = b["seconds"] / a["seconds"] if a["seconds"] > 0 else float("inf")
        print(f"{name:<16} {a['value']:>6} {a['nodes']:>7} {a['seconds']:>10.4f} {b['seconds']:>10.4f} {speedup:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
