"""Track the square-function and beta statistics as the sample is refined.

For each curve and sample size, prints the largest L2 ratio over cubes and
radii, the normalised beta sum on the root cube, and the beta sum split by
level (so a drift can be traced to the scales that cause it).  Run from the
repository root:

    python3 scripts/refinement_study.py --sizes 512 1024 2048
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from heisenkit.beta import beta_table, tsp_sum
from heisenkit.cubes import build_cubes
from heisenkit.kernels import K1
from heisenkit.measure import lifted_circle_set, lifted_zigzag_set
from heisenkit.sio import l2_statistic

CURVES = {
    "circle": lifted_circle_set,
    "zigzag1": lambda n: lifted_zigzag_set(n, 1),
    "zigzag2": lambda n: lifted_zigzag_set(n, 2),
    "zigzag3": lambda n: lifted_zigzag_set(n, 3),
}


def study(name: str, n: int) -> dict:
    t0 = time.perf_counter()
    pset = CURVES[name](n)
    tree = build_cubes(pset)
    table = beta_table(pset, tree, 0)
    tsp = tsp_sum(pset, tree, 0, table=table)
    per_level = {}
    for row in table:
        per_level[row["level"]] = per_level.get(row["level"], 0.0) + row["beta"] ** 4 * row["mu"]
    return {
        "curve": name,
        "n": n,
        "levels": f"{tree.j_min}..{tree.j_max}",
        "cubes": len(tree.cubes),
        "l2_max": l2_statistic(pset, tree, K1).max,
        "tsp_ratio": tsp.ratio,
        "by_level": " ".join(f"{j}:{v / tsp.mu_s:.2e}" for j, v in sorted(per_level.items())),
        "seconds": round(time.perf_counter() - t0, 1),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--curves", nargs="+", default=list(CURVES), choices=list(CURVES))
    parser.add_argument("--sizes", nargs="+", type=int, default=[512, 1024, 2048])
    args = parser.parse_args()
    out = csv.DictWriter(sys.stdout, fieldnames=["curve", "n", "levels", "cubes", "l2_max", "tsp_ratio",
                                                  "by_level", "seconds"], lineterminator="\n")
    out.writeheader()
    for name in args.curves:
        for n in args.sizes:
            out.writerow(study(name, n))
            sys.stdout.flush()


if __name__ == "__main__":
    main()
