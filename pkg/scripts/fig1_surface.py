"""Ground-state pme of the three-qubit (J, k) ring over a grid, as CSV for surface plots."""
import argparse
import sys

import numpy as np

from mmes.models import hjk3_ground_facts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=50)
    ap.add_argument("--limit", type=float, default=2.0)
    ap.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = ap.parse_args()

    grid = np.linspace(-args.limit, args.limit, args.steps)
    print("J,k,gs_energy,gs_pme,ghz_level,degenerate", file=args.out)
    plateau, region = [], []
    for J in grid:
        for k in grid:
            f = hjk3_ground_facts(J, k)
            print(f"{J:.12g},{k:.12g},{f.ground_energy:.12g},{f.gs_pme:.12g},{f.ghz_level},"
                  f"{str(f.ground_degenerate).lower()}", file=args.out)
            if J > 0 and k > 0:
                plateau.append(f.gs_pme)
            if k > 0 and J < -k / 2:
                region.append(f.gs_pme)
    print(f"plateau pme in [{min(plateau):.12g}, {max(plateau):.12g}]", file=sys.stderr)
    print(f"max ground-state pme for k > 0, J < -k/2: {max(region):.6f}", file=sys.stderr)


if __name__ == "__main__":
    main()
