"""Measure the empirical constants used as regression bounds and write tests/frozen.py.

Each bound is twice the maximum over a deterministic seed-0 sample (floors
are half the minimum).  Run from the repository root:

    python3 scripts/freeze_constants.py
"""

from __future__ import annotations

import argparse
import pprint
import time
from pathlib import Path

import numpy as np

from heisenkit import curvature as curv
from heisenkit.cubes import build_cubes, verify_cube_axioms
from heisenkit.kernels import KernelSpec, cz_smoothness_ratio, sample_smoothness_triples
from heisenkit.measure import horizontal_segment_set, lifted_circle_set, lifted_zigzag_set
from heisenkit.sio import tj_beta_diagnostic

SAMPLES = 1_000_000
ALPHA = 0.5
CUBE_SETS = {
    "horizontal_segment": lambda: horizontal_segment_set(512),
    "lifted_circle": lambda: lifted_circle_set(512),
    "lifted_zigzag": lambda: lifted_zigzag_set(512, 2),
}
TJ_LEVELS = (2, 3)
TJ_STRIDE = 8


def smoothness(m: int) -> float:
    rng = np.random.default_rng(0)
    p, p2, q = sample_smoothness_triples(rng, SAMPLES)
    return float(np.max(cz_smoothness_ratio(KernelSpec(m), p, p2, q)))


def defect_gamma() -> float:
    rng = np.random.default_rng(0)
    p1, p2, p3 = curv.sample_sigma_triples(rng, SAMPLES, ALPHA)
    return float(np.max(curv.partial_nh1_ratio(p1, p2, p3, ALPHA)))


def menger_defect() -> float:
    rng = np.random.default_rng(0)
    sides = curv.sample_sigma_sides(rng, SAMPLES, ALPHA)
    return float(np.max(curv.c2_partial_ratio(*sides.T)))


def cube_bounds() -> dict:
    out = {}
    for name, make in CUBE_SETS.items():
        pset = make()
        rep = verify_cube_axioms(build_cubes(pset), pset)
        lo, hi = rep.mass_band
        out[name] = {"d3_floor": rep.d3_constant / 2, "mass_band": (lo / 2, hi * 2)}
    return out


def tj_bound() -> float:
    pset = lifted_circle_set(512)
    pts = range(0, len(pset), TJ_STRIDE)
    return max(tj_beta_diagnostic(pset, j, points=pts).max_ratio for j in TJ_LEVELS)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="tests/frozen.py")
    args = parser.parse_args()
    t0 = time.time()
    raw = {
        "smoothness_max": {m: smoothness(m) for m in (2, 8)},
        "defect_gamma_max": defect_gamma(),
        "menger_defect_max": menger_defect(),
        "tj_beta_max": tj_bound(),
    }
    frozen = {
        "SMOOTHNESS_BOUND": {m: 2 * v for m, v in raw["smoothness_max"].items()},
        "DEFECT_GAMMA_BOUND": 2 * raw["defect_gamma_max"],
        "MENGER_DEFECT_BOUND": 2 * raw["menger_defect_max"],
        "TJ_BETA_BOUND": 2 * raw["tj_beta_max"],
        "CUBE_BOUNDS": cube_bounds(),
    }
    lines = [
        '"""Regression bounds written by scripts/freeze_constants.py; do not edit by hand."""',
        "",
        f"SAMPLES = {SAMPLES}",
        f"ALPHA = {ALPHA!r}",
        f"TJ_LEVELS = {TJ_LEVELS!r}",
        f"TJ_STRIDE = {TJ_STRIDE}",
        f"MEASURED = {pprint.pformat(raw, sort_dicts=True)}",
        "",
    ]
    lines += [f"{k} = {pprint.pformat(v, sort_dicts=True)}" for k, v in frozen.items()]
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"wrote {args.out} in {time.time() - t0:.1f} s")


if __name__ == "__main__":
    main()
