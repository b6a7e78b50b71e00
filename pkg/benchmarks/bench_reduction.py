"""Compare the numba kernels with the interpreted fallback.

Usage: python3 benchmarks/bench_reduction.py [--points 40] [--hyp-points 60] [--repeats 3]

Each mode runs in a fresh interpreter because RIPSLAB_DISABLE_NUMBA is read at
import time.  The compiled run is warmed up first so compilation is excluded.
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from ripslab import _accel
from ripslab.complexes import vr_filtration
from ripslab.invariants import hyperbolicity
from ripslab.metric_spaces import random_space, sample_circle
from ripslab.persistence import compute_barcode

points, hyp_points, repeats = map(int, sys.argv[1:4])
f = vr_filtration(sample_circle(points, 1.0), 3)
D = random_space(hyp_points, seed=0)
# warm-up (compiles when numba is on)
compute_barcode(vr_filtration(sample_circle(6, 1.0), 3), 2, 2)
hyperbolicity(random_space(5, seed=1))

def best(fn):
    out = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        res = fn()
        out = min(out, time.perf_counter() - t0)
    return out, res

t_red, b = best(lambda: compute_barcode(f, 2, 2))
t_hyp, h = best(lambda: hyperbolicity(D))
print(json.dumps({"numba": _accel.USE_NUMBA, "simplices": len(f), "reduction_s": t_red,
                  "hyperbolicity_s": t_hyp, "barcode": repr(b), "hyperbolicity": h}))
"""


def run(disable, args):
    env = dict(os.environ, RIPSLAB_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", WORKER, str(args.points), str(args.hyp_points), str(args.repeats)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=40, help="circle sample size for the reduction")
    ap.add_argument("--hyp-points", type=int, default=60, help="space size for hyperbolicity")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    fast = run(False, args)
    slow = run(True, args)
    if fast["barcode"] != slow["barcode"] or abs(fast["hyperbolicity"] - slow["hyperbolicity"]) > 1e-12:
        sys.exit("numba and fallback results differ")
    print(f"filtration: {args.points}-point circle, {fast['simplices']} simplices, H0..H2 over F2")
    print(f"{'kernel':<16}{'numba (s)':>12}{'fallback (s)':>14}{'speedup':>10}")
    for key, label in (("reduction_s", "reduction"), ("hyperbolicity_s", f"hyp (n={args.hyp_points})")):
        print(f"{label:<16}{fast[key]:>12.4f}{slow[key]:>14.4f}{slow[key] / fast[key]:>9.1f}x")


if __name__ == "__main__":
    main()
