"""Numerical minimum of the average balanced purity for small registers."""
import argparse
import time

from mmes.core import is_perfect_mmes, pme_lower_bound
from mmes.optimize import OptimizerConfig, minimize_pme

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--restarts", type=int)
    args = ap.parse_args()
    for n in args.sizes:
        t = time.perf_counter()
        state, value, trace = minimize_pme(n, OptimizerConfig(restarts=args.restarts, seed=args.seed))
        print(f"n={n} min pme={value:.10f} bound={pme_lower_bound(n):.6f} "
              f"perfect={is_perfect_mmes(state, 1e-6)} steps={len(trace)} ({time.perf_counter() - t:.1f} s)")
