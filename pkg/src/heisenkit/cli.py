"""Batch experiment runner.

    heisenkit <subcommand> --config <path> [--seed <u64>] [--out <dir>]

Exit codes: 0 success, 1 a property check failed, 2 invalid config or I/O.
Every artifact starts with a ``# heisenkit seed=<seed>`` comment line and
contains no timestamps, so identical (config, seed) pairs give identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable

import numpy as np

from . import beta as beta_mod
from . import curvature as curv
from . import sio
from .cubes import build_cubes, format_tree, verify_cube_axioms
from .heis import _koranyi, _mul, _nh
from .kernels import KernelSpec, eval_kernel, eval_pair
from .measure import GENERATORS, format_pointset, make_set

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "run", "main", "VERIFY_SUITES", "SUBCOMMANDS"]

U64 = 2**64


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


@dataclass
class GeneratorConfig:
    name: str = "lifted_circle"
    params: dict = field(default_factory=lambda: {"n": 512})


@dataclass
class TripleConfig:
    mode: str = "exact"
    cap: int = curv.EXACT_CAP
    samples: int = 200_000
    center: list[float] | None = None
    radius: float | None = None


@dataclass
class ExperimentConfig:
    generator: GeneratorConfig = field(default_factory=GeneratorConfig)
    kernel_m: int = 8
    levels: list[int] | None = None
    alpha: float = 0.5
    eps_grid: str | list[float] = "default"
    lam: float = 10.0
    exponent: float = 4.0
    triples: TripleConfig = field(default_factory=TripleConfig)
    fuzz_cases: int = 20_000
    seed: int = 0
    out: str = "out"

    def as_dict(self) -> dict:
        return asdict(self)


def _fail(name: str, msg: str):
    raise ConfigError(f"{name}: {msg}")


def _int(value, name: str, lo: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(name, f"expected an integer, got {value!r}")
    if lo is not None and value < lo:
        _fail(name, f"must be >= {lo}, got {value}")
    return value


def _real(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        _fail(name, f"expected a finite number, got {value!r}")
    return float(value)


def _keys(d: dict, allowed: set[str], name: str) -> None:
    if not isinstance(d, dict):
        _fail(name, f"expected an object, got {type(d).__name__}")
    extra = sorted(set(d) - allowed)
    if extra:
        _fail(name, f"unknown field(s) {extra}")


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Build and validate a config; raises :class:`ConfigError` naming the first bad field."""
    _keys(raw, {f for f in ExperimentConfig.__dataclass_fields__}, "config")
    cfg = ExperimentConfig()
    if "generator" in raw:
        g = raw["generator"]
        _keys(g, {"name", "params"}, "generator")
        cfg.generator = GeneratorConfig(g.get("name", cfg.generator.name), dict(g.get("params", {})))
    gen = GENERATORS.get(cfg.generator.name)
    if gen is None:
        _fail("generator.name", f"unknown generator {cfg.generator.name!r}; choose from {sorted(GENERATORS)}")
    try:
        inspect.signature(gen).bind(**cfg.generator.params)
    except TypeError as exc:
        _fail("generator.params", str(exc))
    n = cfg.generator.params.get("n")
    _int(n, "generator.params.n", 16)
    if "depth" in cfg.generator.params:
        d = _int(cfg.generator.params["depth"], "generator.params.depth", 0)
        if d > 5:
            _fail("generator.params.depth", f"must be <= 5, got {d}")
    if "radius" in cfg.generator.params and not _real(cfg.generator.params["radius"], "generator.params.radius") > 0:
        _fail("generator.params.radius", "must be positive")

    cfg.kernel_m = _int(raw.get("kernel_m", cfg.kernel_m), "kernel_m", 1)
    if raw.get("levels") is not None:
        lv = raw["levels"]
        if not isinstance(lv, list) or len(lv) != 2:
            _fail("levels", "expected [j_min, j_max]")
        lo, hi = _int(lv[0], "levels[0]"), _int(lv[1], "levels[1]")
        if hi < lo:
            _fail("levels", f"empty window [{lo}, {hi}]")
        cfg.levels = [lo, hi]
    cfg.alpha = _real(raw.get("alpha", cfg.alpha), "alpha")
    if not 0 < cfg.alpha < 1:
        _fail("alpha", f"must lie in (0, 1), got {cfg.alpha}")
    grid = raw.get("eps_grid", cfg.eps_grid)
    if isinstance(grid, str):
        if grid != "default":
            _fail("eps_grid", f"expected 'default' or a list of radii, got {grid!r}")
    elif isinstance(grid, list) and grid:
        grid = [_real(v, f"eps_grid[{i}]") for i, v in enumerate(grid)]
        if min(grid) <= 0:
            _fail("eps_grid", "radii must be positive")
    else:
        _fail("eps_grid", f"expected 'default' or a nonempty list, got {grid!r}")
    cfg.eps_grid = grid
    cfg.lam = _real(raw.get("lam", cfg.lam), "lam")
    if cfg.lam < 1:
        _fail("lam", f"must be >= 1, got {cfg.lam}")
    cfg.exponent = _real(raw.get("exponent", cfg.exponent), "exponent")
    if not cfg.exponent > 0:
        _fail("exponent", "must be positive")
    if "triples" in raw:
        t = raw["triples"]
        _keys(t, set(TripleConfig.__dataclass_fields__), "triples")
        cfg.triples = TripleConfig(**{**asdict(TripleConfig()), **t})
    t = cfg.triples
    if t.mode not in ("exact", "mc"):
        _fail("triples.mode", f"expected 'exact' or 'mc', got {t.mode!r}")
    _int(t.cap, "triples.cap", 3)
    _int(t.samples, "triples.samples", 2)
    if (t.center is None) != (t.radius is None):
        _fail("triples.center", "center and radius must be given together")
    if t.center is not None:
        if not isinstance(t.center, list) or len(t.center) != 3:
            _fail("triples.center", "expected [x, y, z]")
        t.center = [_real(v, f"triples.center[{i}]") for i, v in enumerate(t.center)]
        if not _real(t.radius, "triples.radius") > 0:
            _fail("triples.radius", "must be positive")
    elif t.mode == "exact" and n > t.cap:
        _fail("triples.mode", f"exact mode over all {n} points exceeds cap {t.cap}; use 'mc' or a ball")
    cfg.fuzz_cases = _int(raw.get("fuzz_cases", cfg.fuzz_cases), "fuzz_cases", 1)
    cfg.seed = _int(raw.get("seed", cfg.seed), "seed", 0)
    if cfg.seed >= U64:
        _fail("seed", "must fit in 64 bits")
    out = raw.get("out", cfg.out)
    if not isinstance(out, str) or not out:
        _fail("out", "expected a directory path")
    cfg.out = out
    return cfg


def load_config(path) -> ExperimentConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: not valid JSON ({exc})") from None
    return config_from_dict(raw)


# run context ------------------------------------------------------------------


class Context:
    def __init__(self, cfg: ExperimentConfig, out: Path):
        self.cfg = cfg
        self.out = out
        self.spec = KernelSpec(cfg.kernel_m)

    @cached_property
    def pset(self):
        return make_set(self.cfg.generator.name, **self.cfg.generator.params)

    @cached_property
    def tree(self):
        if self.cfg.levels is None:
            return build_cubes(self.pset)
        return build_cubes(self.pset, *self.cfg.levels)

    def rng(self, stream: int) -> np.random.Generator:
        return np.random.default_rng([self.cfg.seed, stream])

    @property
    def stamp(self) -> str:
        return f"# heisenkit seed={self.cfg.seed} generator={self.cfg.generator.name}\n"

    def write(self, name: str, text: str) -> None:
        (self.out / name).write_text(self.stamp + text)

    def write_csv(self, name: str, header: list[str], rows) -> None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        self.write(name, buf.getvalue())

    def write_dat(self, name: str, pairs) -> None:
        self.write(name, "".join(f"{x!r} {y!r}\n" for x, y in pairs))

    def summary(self, sub: str, body: dict) -> dict:
        doc = {"subcommand": sub, "seed": self.cfg.seed, "config": self.cfg.as_dict(), **body}
        (self.out / f"{sub}_summary.json").write_text(json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n")
        return doc


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return v if math.isfinite(v) else repr(v)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    return x


def _fmt_table(rows) -> list[list[str]]:
    return [[repr(v) if isinstance(v, float) else str(v) for v in row] for row in rows]


# subcommands ------------------------------------------------------------------


def cmd_generate(ctx: Context) -> int:
    p = ctx.pset
    ctx.write("pointset.txt", format_pointset(p))
    ctx.summary("generate", {"n": len(p), "total_mass": p.total_mass, "diameter": p.diameter,
                             "max_spacing": p.max_spacing, "provenance": p.provenance})
    return 0


def cmd_cubes(ctx: Context) -> int:
    p, tree = ctx.pset, ctx.tree
    rep = verify_cube_axioms(tree, p)
    ctx.write("cubes.txt", format_tree(tree))
    rows = []
    for j in tree.levels:
        qs = tree.at_level(j)
        mass = [p.mass(q.members) * 2.0**j for q in qs]
        rows.append((j, len(qs), min(mass), max(mass)))
    ctx.write_csv("cubes.csv", ["level", "n_cubes", "min_mass_ratio", "max_mass_ratio"], _fmt_table(rows))
    ctx.write_dat("cubes.dat", [(j, c) for j, c, _, _ in rows])
    ctx.summary("cubes", {"levels": [tree.j_min, tree.j_max], "report": rep.as_dict()})
    return 0 if rep.ok else 1


def cmd_beta(ctx: Context) -> int:
    p, tree = ctx.pset, ctx.tree
    root = tree.roots()[0]
    res = beta_mod.tsp_sum(p, tree, root, ctx.cfg.exponent, ctx.cfg.lam)
    ctx.write("beta.csv", beta_mod.format_beta_csv(res))
    ctx.write_dat("beta.dat", [(r["cube_id"], float(r["beta"])) for r in res.rows])
    betas = [float(r["beta"]) for r in res.rows]
    ok = all(0.0 <= b <= 1.0 + 1e-12 for b in betas)
    ctx.summary("beta", {"tsp_sum": res.total, "mu_root": res.mu_s, "tsp_ratio": res.ratio,
                         "max_beta": max(betas), "n_cubes": len(betas), "lam": ctx.cfg.lam,
                         "exponent": ctx.cfg.exponent, "ok": ok})
    return 0 if ok else 1


def _eps_grid(ctx: Context):
    return None if ctx.cfg.eps_grid == "default" else ctx.cfg.eps_grid


def cmd_sio(ctx: Context) -> int:
    p, tree, spec = ctx.pset, ctx.tree, ctx.spec
    rep = sio.l2_statistic(p, tree, spec, _eps_grid(ctx))
    ctx.write("sio.csv", sio.format_l2_csv(rep))
    per_eps = {}
    for _, eps, ratio in rep.rows:
        per_eps[eps] = max(per_eps.get(eps, 0.0), ratio)
    ctx.write_dat("sio.dat", sorted(per_eps.items()))
    ones = np.ones(len(p))
    sandwich = sio.sandwich_margins(p, spec, ones)
    tol = 1e-12
    sandwich_ok = all(v["min_t"] >= -tol * v["scale"] and v["min_gap"] >= -tol * v["scale"] for v in sandwich.values())
    grid = np.array(rep.eps_grid)
    pv_eps = grid[grid >= 2 * p.max_spacing]
    pv_ok, pv_rep = True, None
    if len(pv_eps):
        values, pv_rep = sio.pv_estimate(p, spec, ones, pv_eps)
        pv_ok = pv_rep.monotone
        ctx.write_csv("pv.csv", ["eps", "mean_value", "max_value"],
                      _fmt_table((float(e), float(v.mean()), float(v.max())) for e, v in zip(pv_eps, values)))
        ctx.write_dat("pv.dat", [(float(e), float(v.mean())) for e, v in zip(pv_eps, values)])
    ok = sandwich_ok and pv_ok
    ctx.summary("sio", {"l2": rep.as_dict(), "kernel_m": spec.m, "n": len(p), "max_spacing": p.max_spacing,
                        "levels": [tree.j_min, tree.j_max], "sandwich": {str(k): v for k, v in sandwich.items()},
                        "sandwich_ok": sandwich_ok, "pv": None if pv_rep is None else pv_rep.as_dict(), "ok": ok})
    return 0 if ok else 1


def _fuzz_inequalities(ctx: Context) -> dict:
    m = ctx.cfg.fuzz_cases
    rng = ctx.rng(1)
    a, b, c = (rng.uniform(-1, 1, size=(m, 3)) for _ in range(3))
    nh2 = curv.nh2_triangle_check(a, b, c)
    scale2 = np.maximum(np.max(np.abs(a), axis=1), 1.0) ** 2
    base = rng.uniform(-1, 1, size=(m, 3))
    theta = rng.uniform(0, np.pi, size=m)
    two = curv.two_point_line_margin(a, b, (base, theta))
    p1, p2, p3, al, ep = curv.sample_strip_triples(rng, m)
    ok_strip, strip = curv.strip_lemma_margins(p1, p2, p3, al, ep)
    r = np.maximum.reduce([_koranyi(_mul(-p2, p1)), _koranyi(_mul(-p3, p2)), _koranyi(_mul(-p3, p1))])
    out = {
        "cases": m,
        "nh2_min_margin": float(nh2.min()),
        "nh2_violations": int(np.sum(nh2.min(axis=1) < -1e-9 * scale2)),
        "two_point_min_margin": float(two.min()),
        "two_point_violations": int(np.sum(two < -1e-9)),
        "strip_min_margin": float(strip.min()),
        "strip_violations": int(np.sum(ok_strip & (strip.min(axis=1) < -1e-9 * r))),
    }
    out["violations"] = out["nh2_violations"] + out["two_point_violations"] + out["strip_violations"]
    return out


def cmd_curvature(ctx: Context) -> int:
    p, t = ctx.pset, ctx.cfg.triples
    center = None if t.center is None else np.array(t.center)
    R = np.inf if t.radius is None else t.radius
    sums = curv.triple_functionals(p, ctx.cfg.alpha, center, R, mode=t.mode, cap=t.cap,
                                   seed=ctx.cfg.seed, samples=t.samples)
    ctx.write("curvature.csv", curv.format_functionals_csv(sums))
    ctx.write_dat("curvature.dat", [(0, sums.menger_sum), (1, sums.gamma_sum), (2, sums.nh_perm_sum)])
    fuzz = _fuzz_inequalities(ctx)
    ctx.summary("curvature", {"functionals": sums.as_dict(), "fuzz": fuzz, "ok": fuzz["violations"] == 0})
    return 0 if fuzz["violations"] == 0 else 1


# verify suites -----------------------------------------------------------------


def _suite_heis(ctx: Context) -> dict:
    m = ctx.cfg.fuzz_cases
    rng = ctx.rng(2)
    a, b, c = (rng.uniform(-2, 2, size=(m, 3)) for _ in range(3))
    assoc = np.abs(_mul(_mul(a, b), c) - _mul(a, _mul(b, c))).max()
    ident = np.abs(_mul(a, -a)).max()
    d = lambda p, q: _koranyi(_mul(-q, p))
    left = np.abs(d(_mul(c, a), _mul(c, b)) - d(a, b)).max()
    tri = (d(a, b) + d(b, c) - d(a, c)).min()
    nh_le_n = (_koranyi(a) - _nh(a)).min()
    s = rng.uniform(0.1, 10, size=m)
    scaled = np.stack([s * a[:, 0], s * a[:, 1], s * s * a[:, 2]], axis=-1)
    hom = np.abs(_koranyi(scaled) - s * _koranyi(a)).max()
    ok = assoc < 1e-10 and ident < 1e-12 and left < 1e-10 and tri > -1e-12 and nh_le_n >= -1e-15 and hom < 1e-10
    return {"ok": bool(ok), "associativity": float(assoc), "inverse": float(ident), "left_invariance": float(left),
            "triangle_min_margin": float(tri), "nh_le_n_min_margin": float(nh_le_n), "homogeneity": float(hom)}


def _suite_kernels(ctx: Context) -> dict:
    m = ctx.cfg.fuzz_cases
    rng = ctx.rng(3)
    a, b = (rng.uniform(-1, 1, size=(m, 3)) for _ in range(2))
    s = rng.uniform(0.1, 10, size=m)
    da = np.stack([s * a[:, 0], s * a[:, 1], s * s * a[:, 2]], -1)
    k = eval_kernel(ctx.spec, a)
    hom = np.max(np.abs(eval_kernel(ctx.spec, da) * s - k) / np.abs(k).clip(1e-300))
    sym = np.max(np.abs(eval_pair(ctx.spec, a, b) - eval_pair(ctx.spec, b, a)))
    size = np.max(k * _koranyi(a))
    ok = hom < 1e-10 and sym < 1e-10 * max(1.0, float(np.abs(k).max())) and size <= 1 + 1e-12
    return {"ok": bool(ok), "homogeneity_rel": float(hom), "symmetry": float(sym), "size_bound": float(size)}


def _suite_inequalities(ctx: Context) -> dict:
    out = _fuzz_inequalities(ctx)
    return {"ok": out["violations"] == 0, **out}


def _suite_cubes(ctx: Context) -> dict:
    rep = verify_cube_axioms(ctx.tree, ctx.pset)
    return {"ok": rep.ok, **rep.as_dict()}


def _suite_sio(ctx: Context) -> dict:
    p, tree, spec = ctx.pset, ctx.tree, ctx.spec
    ones = np.ones(len(p))
    sw = sio.sandwich_margins(p, spec, ones)
    sw_ok = all(v["min_t"] >= -1e-12 * v["scale"] and v["min_gap"] >= -1e-12 * v["scale"] for v in sw.values())
    root = tree.roots()[0]
    _, hi = sio.dyadic_window(p)
    _, _, q_rel = sio.q_ortho_check(p, tree, spec, root, hi)
    van = sio.vanishing_scale_check(p, tree, spec)
    l2 = sio.l2_statistic(p, tree, spec, _eps_grid(ctx))
    ok = sw_ok and q_rel < 1e-9 and van == 0.0 and math.isfinite(l2.max)
    return {"ok": bool(ok), "sandwich_ok": sw_ok, "q_ortho_rel": q_rel, "vanishing_scale_max": van,
            "max_l2_ratio": l2.max}


def _suite_beta(ctx: Context) -> dict:
    p, tree = ctx.pset, ctx.tree
    coarse = [q for q in tree.cubes if q.level <= tree.j_min + 2]
    vals = [beta_mod.beta_cube_result(p, tree, q, ctx.cfg.lam) for q in coarse]
    ok = all(0.0 <= r.value <= 1.0 + 1e-12 and r.value >= r.lower_bound * (1 - 1e-9) for r in vals)
    return {"ok": bool(ok), "cubes_checked": len(vals), "max_beta": max(r.value for r in vals)}


def _suite_curvature(ctx: Context) -> dict:
    rng = ctx.rng(4)
    m = ctx.cfg.fuzz_cases
    alpha = ctx.cfg.alpha
    p1, p2, p3 = curv.sample_sigma_triples(rng, m, alpha)
    st = curv.triple_stats(p1, p2, p3)
    sides = np.stack([st.d12, st.d23, st.d13])
    brute = np.min([sides[i] + sides[j] - sides[k] for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0))], axis=0)
    defect_err = float(np.max(np.abs(np.maximum(brute, 0.0) - st.defect)))
    nh = [np.asarray(st.nh12) * st.d12, np.asarray(st.nh23) * st.d23, np.asarray(st.nh13) * st.d13]
    gap = curv.gamma_domination_gap(alpha, st.gamma1, st.gamma2, st.diam, *nh)
    scale = np.maximum(st.gamma1**2 * st.gamma2**2 / st.diam**2, 1e-300)
    gamma_viol = int(np.sum(gap < -1e-9 * scale))
    ordered = bool(np.all(st.gamma1 >= st.gamma2) and np.all(st.defect >= 0) and np.all(st.menger >= 0))
    ok = defect_err < 1e-12 and gamma_viol == 0 and ordered
    return {"ok": bool(ok), "defect_formula_error": defect_err, "gamma_domination_violations": gamma_viol,
            "field_order_ok": ordered}


VERIFY_SUITES: dict[str, Callable[[Context], dict]] = {
    "heis": _suite_heis,
    "kernels": _suite_kernels,
    "inequalities": _suite_inequalities,
    "cubes": _suite_cubes,
    "sio": _suite_sio,
    "beta": _suite_beta,
    "curvature": _suite_curvature,
}


def cmd_verify(ctx: Context) -> int:
    results = {name: suite(ctx) for name, suite in VERIFY_SUITES.items()}
    failed = sorted(name for name, r in results.items() if not r.get("ok", False))
    ctx.write_csv("verify.csv", ["suite", "ok"], [(name, r.get("ok", False)) for name, r in results.items()])
    ctx.summary("verify", {"suites": results, "failed": failed, "ok": not failed})
    return 1 if failed else 0


def cmd_report(ctx: Context) -> int:
    merged = {"seed": ctx.cfg.seed, "config": ctx.cfg.as_dict(), "results": {}}
    for path in sorted(ctx.out.glob("*_summary.json")):
        doc = json.loads(path.read_text())
        merged["results"][doc.get("subcommand", path.stem)] = {k: v for k, v in doc.items() if k != "config"}
    (ctx.out / "summary.json").write_text(json.dumps(_jsonable(merged), indent=2, sort_keys=True) + "\n")
    return 0


SUBCOMMANDS: dict[str, Callable[[Context], int]] = {
    "generate": cmd_generate,
    "cubes": cmd_cubes,
    "beta": cmd_beta,
    "sio": cmd_sio,
    "curvature": cmd_curvature,
    "verify": cmd_verify,
    "report": cmd_report,
}


def run(subcommand: str, cfg: ExperimentConfig, out: str | Path | None = None) -> int:
    if subcommand not in SUBCOMMANDS:
        raise ConfigError(f"subcommand: unknown {subcommand!r}")
    out_dir = Path(cfg.out if out is None else out)
    out_dir.mkdir(parents=True, exist_ok=True)
    return SUBCOMMANDS[subcommand](Context(cfg, out_dir))


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < U64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def main(argv: list[str] | None = None) -> int:
    parser = _Parser(prog="heisenkit", description="Heisenberg-group singular integral experiments.")
    parser.add_argument("subcommand", choices=sorted(SUBCOMMANDS))
    parser.add_argument("--config", required=True, help="JSON experiment config")
    parser.add_argument("--seed", type=_seed, default=None, help="unsigned 64-bit seed (overrides the config)")
    parser.add_argument("--out", default=None, help="output directory (overrides the config)")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        return run(args.subcommand, cfg, args.out)
    except ConfigError as exc:
        print(f"heisenkit: invalid config: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"heisenkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
