"""Truncated and smoothly truncated singular integrals on a weighted point set.

Every operator is a weighted kernel sum over the sample,

    (T f)_i = sum_j cut(d(p_i, p_j)) K(p_j^-1 p_i) f_j w_j,

with ``cut`` either the sharp truncation ``1{d > eps}`` or the smooth dyadic
cut ``phi_j(d) = psi(2^j d) - psi(2^(j+1) d)``.  Sums run along matrix rows
with numpy's pairwise summation, which does not depend on thread count.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .beta import beta_ball
from .cubes import CubeTree
from .kernels import K1, KernelSpec, kernel_matrix
from .measure import WeightedPointSet

__all__ = [
    "psi",
    "psi_j",
    "phi_j",
    "dyadic_window",
    "feasible_orders",
    "truncated_op",
    "dyadic_op",
    "partial_sum_op",
    "sandwich_margins",
    "q_ortho_check",
    "vanishing_scale_check",
    "default_eps_grid",
    "L2Report",
    "l2_statistic",
    "format_l2_csv",
    "write_l2_csv",
    "PvReport",
    "pv_estimate",
    "TjReport",
    "tj_beta_diagnostic",
]


def psi(t):
    """Even piecewise-linear bump: 1 on ``|t| <= 1/2``, 0 on ``|t| >= 2``."""
    a = np.abs(np.asarray(t, dtype=float))
    out = np.clip((2.0 - a) / 1.5, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def psi_j(j: int, d):
    return psi(2.0**j * np.asarray(d, dtype=float))


def phi_j(j: int, d):
    """``psi_j - psi_(j+1)``; supported where ``2^(-2-j) < d < 2^(1-j)``."""
    d = np.asarray(d, dtype=float)
    out = psi(2.0**j * d) - psi(2.0 ** (j + 1) * d)
    return float(out) if np.ndim(out) == 0 else out


def dyadic_window(pset: WeightedPointSet) -> tuple[int, int]:
    """Levels ``j`` whose cut can be nonzero on some pair of the set.

    Below the window ``psi_j`` is identically 1 on all pair distances, so the
    partial sum over the window telescopes to ``1 - psi_(n+1)``.
    """
    D = pset.dist_matrix
    d_min = float(D[D > 0].min())
    lo = math.floor(-math.log2(pset.diameter)) - 1
    hi = math.ceil(1.0 - math.log2(d_min)) - 1
    return lo, hi


def feasible_orders(pset: WeightedPointSet) -> list[int]:
    """Orders ``n`` with ``2^-n`` between the smallest pair distance and the diameter."""
    D = pset.dist_matrix
    d_min = float(D[D > 0].min())
    return list(range(math.ceil(-math.log2(pset.diameter)), math.floor(-math.log2(d_min)) + 1))


def _check_f(pset: WeightedPointSet, f) -> np.ndarray:
    f = np.asarray(f, dtype=float).reshape(-1)
    if len(f) != len(pset):
        raise ValueError(f"function has {len(f)} values for {len(pset)} points")
    return f


def _weighted_kernel(pset: WeightedPointSet, spec: KernelSpec) -> np.ndarray:
    key = ("kernel-w", spec.m)
    if key not in pset.derived:
        Kw = kernel_matrix(pset, spec) * pset.weights[None, :]
        Kw.setflags(write=False)
        pset.derived[key] = Kw
    return pset.derived[key]


def _apply(M: np.ndarray, f: np.ndarray) -> np.ndarray:
    return (M * f[None, :]).sum(axis=1)


def truncated_op(pset: WeightedPointSet, spec: KernelSpec, f, eps: float) -> np.ndarray:
    """``T^eps f``: the kernel sum over pairs at distance greater than ``eps``."""
    f = _check_f(pset, f)
    if not eps > 0:
        raise ValueError("truncation radius must be positive")
    Kw = _weighted_kernel(pset, spec)
    return _apply(np.where(pset.dist_matrix > eps, Kw, 0.0), f)


def _dyadic_matrix(pset: WeightedPointSet, spec: KernelSpec, j: int) -> np.ndarray:
    return phi_j(j, pset.dist_matrix) * _weighted_kernel(pset, spec)


def dyadic_op(pset: WeightedPointSet, spec: KernelSpec, f, j: int) -> np.ndarray:
    """``T_(j) f`` with kernel ``phi_j(N) K``."""
    f = _check_f(pset, f)
    return _apply(_dyadic_matrix(pset, spec, j), f)


def partial_sum_op(pset: WeightedPointSet, spec: KernelSpec, f, n: int) -> np.ndarray:
    """``S_n f``: sum of ``T_(j) f`` over window levels ``j <= n``."""
    f = _check_f(pset, f)
    lo, hi = dyadic_window(pset)
    out = np.zeros(len(pset))
    for j in range(lo, min(n, hi) + 1):
        out += dyadic_op(pset, spec, f, j)
    return out


def sandwich_margins(pset: WeightedPointSet, spec: KernelSpec, f, orders=None) -> dict[int, dict]:
    """For each order ``n``: ``min T^eps f`` and ``min (S_(n+1) f - T^eps f)`` at ``eps = 2^-n``.

    Both are ``>= 0`` for ``f >= 0``.
    """
    f = _check_f(pset, f)
    out = {}
    for n in feasible_orders(pset) if orders is None else orders:
        t = truncated_op(pset, spec, f, 2.0**-n)
        s = partial_sum_op(pset, spec, f, n + 1)
        scale = max(float(np.abs(s).max()), 1.0)
        out[n] = {"min_t": float(t.min()), "min_gap": float((s - t).min()), "scale": scale}
    return out


def q_ortho_check(pset: WeightedPointSet, tree: CubeTree, spec: KernelSpec, s, n: int) -> tuple[float, float, float]:
    """``||S_n chi_S||^2`` on ``S`` computed directly and through the dyadic pieces.

    Returns ``(direct, expanded, relative difference)``.
    """
    q = tree.cubes[s] if isinstance(s, int) else s
    m = q.members
    w = pset.weights[m]
    lo, hi = dyadic_window(pset)
    Kw = _weighted_kernel(pset, spec)[np.ix_(m, m)]
    Dm = pset.dist_matrix[np.ix_(m, m)]
    pieces = [(phi_j(j, Dm) * Kw).sum(axis=1) for j in range(lo, min(n, hi) + 1)]
    total = np.sum(pieces, axis=0) if pieces else np.zeros(len(m))
    direct = float((total**2 * w).sum())
    expanded = 0.0
    for a, ga in enumerate(pieces):
        expanded += float((ga * ga * w).sum())
        for gb in pieces[a + 1:]:
            expanded += 2.0 * float((ga * gb * w).sum())
    rel = abs(direct - expanded) / max(abs(direct), 1e-300) if direct or expanded else 0.0
    return direct, expanded, rel


def vanishing_scale_check(pset: WeightedPointSet, tree: CubeTree, spec: KernelSpec) -> float:
    """Largest ``|T_(j) chi_S(x)|`` over cubes ``S`` of level ``l``, ``x`` in ``S`` and ``j < l - 2``."""
    lo, _ = dyadic_window(pset)
    Kw = _weighted_kernel(pset, spec)
    worst = 0.0
    for q in tree.cubes:
        if q.level - 3 < lo or len(q.members) < 2:
            continue
        m = q.members
        Dm = pset.dist_matrix[np.ix_(m, m)]
        sub = Kw[np.ix_(m, m)]
        for j in range(lo, q.level - 2):
            worst = max(worst, float(np.abs((phi_j(j, Dm) * sub).sum(axis=1)).max()))
    return worst


def default_eps_grid(pset: WeightedPointSet) -> np.ndarray:
    """Geometric, ratio 1/2, from ``diam / 2`` down to ``4 * max_spacing``."""
    top, floor = pset.diameter / 2.0, 4.0 * pset.max_spacing
    if top < floor:
        return np.array([top])
    k = int(math.floor(math.log2(top / floor) + 1e-12))
    return top * 0.5 ** np.arange(k + 1)


@dataclass
class L2Report:
    max: float
    argmax: dict
    eps_grid: list[float]
    rows: list[tuple[int, float, float]] = field(repr=False)

    def as_dict(self) -> dict:
        return {"max_l2_ratio": self.max, "argmax": self.argmax, "eps_grid": self.eps_grid, "rows": len(self.rows)}


def l2_statistic(pset: WeightedPointSet, tree: CubeTree, spec: KernelSpec, eps_grid=None) -> L2Report:
    """``||T^eps chi_S||^2_{L2(S)} / mu(S)`` for every cube ``S`` and grid radius ``eps``."""
    grid = default_eps_grid(pset) if eps_grid is None else np.asarray(eps_grid, dtype=float)
    if np.any(grid <= 0):
        raise ValueError("truncation radii must be positive")
    Kw = _weighted_kernel(pset, spec)
    rows = []
    best, arg = -1.0, {}
    for q in tree.cubes:
        m = q.members
        w = pset.weights[m]
        mu = float(w.sum())
        Dm = pset.dist_matrix[np.ix_(m, m)]
        sub = Kw[np.ix_(m, m)]
        for eps in grid:
            g = np.where(Dm > eps, sub, 0.0).sum(axis=1)
            ratio = float((g * g * w).sum()) / mu
            rows.append((q.id, float(eps), ratio))
            if ratio > best:
                best, arg = ratio, {"cube_id": q.id, "level": q.level, "eps": float(eps)}
    return L2Report(best, arg, [float(e) for e in grid], rows)


def format_l2_csv(report: L2Report) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["cube_id", "eps", "l2_ratio"])
    for cid, eps, ratio in report.rows:
        out.writerow([cid, repr(eps), repr(ratio)])
    return buf.getvalue()


def write_l2_csv(report: L2Report, path) -> None:
    Path(path).write_text(format_l2_csv(report))


@dataclass
class PvReport:
    eps: list[float]
    max_delta: list[float]
    min_delta: list[float]
    monotone: bool

    def as_dict(self) -> dict:
        return {"eps": self.eps, "max_delta": self.max_delta, "min_delta": self.min_delta, "monotone": self.monotone}


def pv_estimate(pset: WeightedPointSet, spec: KernelSpec, f, eps_sequence) -> tuple[np.ndarray, PvReport]:
    """``T^eps f`` along a decreasing sequence of radii, one row per radius.

    ``monotone`` reports whether every point's value is nondecreasing as the
    radius shrinks, which must hold for ``f >= 0``.
    """
    f = _check_f(pset, f)
    eps = np.asarray(eps_sequence, dtype=float).reshape(-1)
    if len(eps) == 0 or np.any(np.diff(eps) >= 0):
        raise ValueError("radii must be strictly decreasing")
    floor = 2.0 * pset.max_spacing
    if eps[-1] < floor:
        raise ValueError(f"radius {eps[-1]} below the resolution floor {floor}")
    values = np.stack([truncated_op(pset, spec, f, e) for e in eps])
    delta = np.diff(values, axis=0)
    tol = 1e-12 * max(float(np.abs(values).max()), 1.0)
    report = PvReport(
        eps=[float(e) for e in eps],
        max_delta=[float(d.max()) for d in delta],
        min_delta=[float(d.min()) for d in delta],
        monotone=bool(delta.size == 0 or delta.min() >= -tol),
    )
    return values, report


@dataclass
class TjReport:
    j: int
    ratios: np.ndarray = field(repr=False)
    max_ratio: float
    zero_over_zero: int
    violations: int

    def as_dict(self) -> dict:
        return {"j": self.j, "max_ratio": self.max_ratio, "zero_over_zero": self.zero_over_zero,
                "violations": self.violations}


def tj_beta_diagnostic(pset: WeightedPointSet, j: int, spec: KernelSpec = K1, points=None) -> TjReport:
    """Per-point ``T_(j) 1(x) / beta(x, 2^(1-j))^4``.

    ``0 / 0`` counts as 0 and is tallied; a positive value over ``beta = 0``
    is ``inf`` and counts as a violation.  ``points`` restricts the
    evaluation to a subset of indices.
    """
    idx = np.arange(len(pset)) if points is None else np.asarray(points, dtype=int)
    t = _apply(_dyadic_matrix(pset, spec, j)[idx], np.ones(len(pset)))
    r = 2.0 ** (1 - j)
    b4 = np.array([beta_ball(pset, pset.points[i], r).value ** 4 for i in idx])
    tol = 1e-12 * max(float(np.abs(t).max()), 1e-300)
    small = t <= tol
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(b4 > 0, t / np.where(b4 > 0, b4, 1.0), np.where(small, 0.0, np.inf))
    return TjReport(j, ratios, float(ratios.max()) if len(ratios) else 0.0,
                    int(np.sum(small & (b4 == 0))), int(np.sum(~small & (b4 == 0))))
