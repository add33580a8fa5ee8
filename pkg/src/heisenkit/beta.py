"""Beta numbers with respect to horizontal lines, and the traveling-salesman sum.

``beta(X, r) = inf_L sup_{z in X} d(z, L) / r`` over horizontal lines ``L``.
The infimum is approximated from above: candidate lines through pairs of
points, then a compass search over the line parameters
``(theta, planar offset, height)``.  A rigorous lower bound comes for free
from the two-point estimate ``max(d(a, L), d(b, L)) >= NH(a^-1 b)^2 / (16 d(a, b))``
and is reported next to the value, so the optimisation gap is always known.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cubes import Cube, CubeTree, dilated_cube
from .heis import HPoint, HorizontalLine, _dist_to_line_cs, _mul, as_points, pairwise
from .measure import WeightedPointSet

__all__ = [
    "BetaResult",
    "TspResult",
    "beta_points",
    "beta_ball",
    "beta_cube",
    "beta_cube_result",
    "beta_table",
    "tsp_sum",
    "format_beta_csv",
    "write_beta_csv",
    "TWO_POINT_CONSTANT",
]

TWO_POINT_CONSTANT = 1.0 / 16.0
MAX_SWEEPS = 200
REL_TOL = 1e-6
SCREEN_POINTS = 256
SCREEN_KEEP = 24
ACTIVE_FRACTION = 0.85


@dataclass(frozen=True)
class BetaResult:
    value: float
    witness: HorizontalLine
    center: HPoint | None
    radius: float
    lower_bound: float
    n_points: int
    sweeps: int = 0

    @property
    def gap(self) -> float:
        return self.value - self.lower_bound


def _quartic_dist(pts: np.ndarray, theta, offset, height) -> np.ndarray:
    """``d(pts_i, L_k)^4`` as a ``(lines, points)`` array.

    Same algebra as the point-to-line distance in :mod:`heis`, flattened for
    speed: this is the optimiser's inner loop.
    """
    theta = np.asarray(theta, dtype=float)[:, None]
    offset = np.asarray(offset, dtype=float)[:, None]
    height = np.asarray(height, dtype=float)[:, None]
    c, s = np.cos(theta), np.sin(theta)
    bx, by = -offset * s, offset * c
    px, py, pz = pts[:, 0], pts[:, 1], pts[:, 2]
    ux, uy = px - bx, py - by
    uz = pz - height - 0.5 * (bx * py - by * px)
    a = ux * c + uy * s
    b = s * ux - c * uy
    h0 = uz + 0.5 * a * b
    # unique real root of t^3 + P t + Q with P = 9/8 b^2 >= 0, Q = b h0 / 4
    P = 1.125 * b * b
    Q = 0.25 * b * h0
    live = P > 1e-300
    Ps = np.where(live, P, 1.0)
    r = np.sqrt(Ps / 3.0)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        t = -2.0 * r * np.sinh(np.arcsinh(1.5 * Q / (Ps * r)) / 3.0)
    # P negligible against Q: the root is the plain cube root
    t = np.where(live & np.isfinite(t), t, -np.cbrt(Q))
    den = 3.0 * t * t + P
    step = np.divide(t * t * t + P * t + Q, den, out=np.zeros_like(t), where=den > 0)
    t -= step
    A = t * t + b * b
    B = h0 + 0.5 * t * b
    return A * A + B * B


def _sup_dist(pts: np.ndarray, theta, offset, height) -> np.ndarray:
    """``max_i d(pts_i, L)`` for each of a batch of lines given by parameters."""
    return np.sqrt(np.sqrt(_quartic_dist(pts, theta, offset, height).max(axis=1)))


def _candidate_pairs(pts: np.ndarray, D: np.ndarray, budget: int) -> tuple[np.ndarray, np.ndarray]:
    m = len(pts)
    iu, ju = np.triu_indices(m, k=1)
    if len(iu) > budget:
        far = np.argmax(D, axis=1)
        fi = np.arange(m)
        rng = np.random.default_rng(0)
        extra = max(0, budget - m)
        pick = rng.choice(len(iu), size=min(extra, len(iu)), replace=False)
        iu = np.concatenate([fi, iu[np.sort(pick)]])
        ju = np.concatenate([far, ju[np.sort(pick)]])
    planar = np.hypot(pts[ju, 0] - pts[iu, 0], pts[ju, 1] - pts[iu, 1])
    keep = planar > 0
    return iu[keep], ju[keep]


def _to_params(base: np.ndarray, theta: np.ndarray):
    """Convert (base, theta) to (theta, offset, height) of the foot point."""
    c, s = np.cos(theta), np.sin(theta)
    bx, by, bz = base[..., 0], base[..., 1], base[..., 2]
    r = -(bx * c + by * s)
    # z of base . (r c, r s, 0)
    foot_z = bz + 0.5 * (bx * r * s - by * r * c)
    return theta, -bx * s + by * c, foot_z


_STENCIL = np.array([(a, b, c) for a in (-1, 0, 1) for b in (-1, 0, 1) for c in (-1, 0, 1)
                     if (a, b, c) != (0, 0, 0)], dtype=float)


def _refine(pts: np.ndarray, params: np.ndarray, vals: np.ndarray, steps: np.ndarray):
    """Compass search on the 26-neighbour stencil of the scaled line parameters.

    Runs one independent search per row of ``params``.  Axis moves alone
    stall on the kinks of a max-objective; the diagonal directions let two or
    three parameters move together.  Only strict improvements are accepted,
    so values never increase.  Returns ``(vals, params, sweeps)``.

    The stencil is evaluated on an active subset of points (those near the
    current maximum).  A subset maximum never exceeds the full one, so a
    rejected move is rejected for the full set too; an accepted move is
    confirmed on the full set, and any point that spoils it joins the subset.
    """
    params, vals, steps = params.copy(), vals.astype(float).copy(), steps.copy()
    floor = REL_TOL * steps
    q = _quartic_dist(pts, params[:, 0], params[:, 1], params[:, 2])
    act = np.flatnonzero(np.any(q >= (ACTIVE_FRACTION**4) * q.max(axis=1, keepdims=True), axis=0))
    live = (vals > 0) & np.any(steps > floor, axis=1)
    sweeps = 0
    while sweeps < MAX_SWEEPS and live.any():
        sweeps += 1
        rows = np.flatnonzero(live)
        trial = params[rows, None, :] + _STENCIL[None, :, :] * steps[rows, None, :]
        flat = trial.reshape(-1, 3)
        sub = pts[act]
        tv = np.sqrt(np.sqrt(_quartic_dist(sub, flat[:, 0], flat[:, 1], flat[:, 2]).max(axis=1)))
        tv = tv.reshape(len(rows), -1)
        k = np.argmin(tv, axis=1)
        best = tv[np.arange(len(rows)), k]
        cand = np.flatnonzero(best < vals[rows])
        grow = np.full(len(rows), 0.5)
        if cand.size:
            moves = trial[cand, k[cand]]
            full = _quartic_dist(pts, moves[:, 0], moves[:, 1], moves[:, 2])
            fval = np.sqrt(np.sqrt(full.max(axis=1)))
            ok = fval < vals[rows[cand]]
            for i in np.flatnonzero(fval > best[cand] * (1 + 1e-12)):
                # the subset missed a point that matters for this line
                extra = np.flatnonzero(full[i] >= (ACTIVE_FRACTION**4) * full[i].max())
                act = np.union1d(act, extra)
            acc = cand[ok]
            gain = vals[rows[acc]] - fval[ok]
            params[rows[acc]] = moves[ok]
            vals[rows[acc]] = fval[ok]
            grow[acc] = np.where(gain <= REL_TOL * fval[ok], 1.5 * 0.25, 1.5)
            # a spoiled move is retried with the enlarged subset at the same step
            grow[cand[~ok]] = np.where(fval[~ok] > best[cand[~ok]] * (1 + 1e-12), 1.0, 0.5)
        steps[rows] *= grow[:, None]
        live = (vals > 0) & np.any(steps > floor, axis=1)
    return vals, params, sweeps


def _optimise(pts: np.ndarray, D: np.ndarray, budget: int, starts: int = 3):
    """Return ``(sup distance, theta, offset, height, sweeps)`` of the best line found."""
    iu, ju = _candidate_pairs(pts, D, budget)
    if len(iu) == 0:
        # all points share one planar projection: vertical fibre, any direction works
        iu = np.zeros(1, dtype=int)
        theta = np.zeros(1)
    else:
        theta = np.arctan2(pts[ju, 1] - pts[iu, 1], pts[ju, 0] - pts[iu, 0])
    th, off, hh = _to_params(pts[iu], theta)
    # screen on a spread-out subsample (a lower bound of the sup), then
    # score the most promising candidates exactly
    probe = pts if len(pts) <= SCREEN_POINTS else pts[np.linspace(0, len(pts) - 1, SCREEN_POINTS).astype(int)]
    chunk = max(1, 2_000_000 // len(probe))
    vals = np.concatenate([_sup_dist(probe, th[lo:lo + chunk], off[lo:lo + chunk], hh[lo:lo + chunk])
                           for lo in range(0, len(th), chunk)])
    if probe is not pts:
        short = np.argsort(vals, kind="stable")[:SCREEN_KEEP]
        th, off, hh = th[short], off[short], hh[short]
        vals = _sup_dist(pts, th, off, hh)
    order = np.argsort(vals, kind="stable")[:starts]
    v0 = vals[order]
    if v0[0] == 0.0:
        return 0.0, float(th[order[0]]), float(off[order[0]]), float(hh[order[0]]), 0
    extent = max(float(D.max()), float(v0[0]))
    steps = np.column_stack([v0 / extent, v0, v0 * extent])
    start = np.column_stack([th[order], off[order], hh[order]])
    v, p, sweeps = _refine(pts, start, v0, steps)
    k = int(np.argmin(v))  # first minimum: lowest-ranked start among ties
    return float(v[k]), *map(float, p[k]), sweeps


def _two_point_lower(D: np.ndarray, H: np.ndarray) -> float:
    with np.errstate(invalid="ignore", divide="ignore"):
        lb = np.where(D > 0, H * H / np.where(D > 0, D, 1.0), 0.0)
    return TWO_POINT_CONSTANT * float(lb.max()) if lb.size else 0.0


def _fit(pts: np.ndarray, D: np.ndarray, H: np.ndarray) -> tuple:
    """``(sup distance, theta, offset, height, sweeps, unscaled lower bound)``."""
    if len(pts) == 1:
        return 0.0, 0.0, 0.0, 0.0, 0, 0.0
    budget = max(200, 4 * len(pts))
    # search in coordinates centred at the medoid so the line parameters, and
    # hence the search path, do not depend on where the set sits in the group
    g = pts[int(np.argmin(D.sum(axis=1)))]
    val, th, off, hh, sweeps = _optimise(_mul(-g, pts), D, budget)
    local = np.array([-off * math.sin(th), off * math.cos(th), hh])
    th, off, hh = HorizontalLine(HPoint(*_mul(g, local)), th).params()
    return val, float(th), float(off), float(hh), sweeps, _two_point_lower(D, H)


def _result(pts: np.ndarray, fit: tuple, scale: float, center) -> BetaResult:
    val, th, off, hh, sweeps, lower = fit
    if len(pts) == 1:
        witness = HorizontalLine(HPoint(*pts[0]), 0.0)
    else:
        witness = HorizontalLine.from_params(th, off, hh)
    return BetaResult(val / scale, witness, center, scale, min(lower, val) / scale, len(pts), sweeps)


def beta_points(points, scale: float, *, D=None, H=None, center=None) -> BetaResult:
    """``inf_L max_i d(p_i, L) / scale`` over horizontal lines ``L``."""
    pts = as_points(points).reshape(-1, 3)
    if len(pts) == 0:
        raise ValueError("beta of an empty point set is undefined")
    if not scale > 0:
        raise ValueError("scale must be positive")
    if D is None or H is None:
        D, H = pairwise(pts)
    return _result(pts, _fit(pts, D, H), scale, center)


def _subset_fit(pset: WeightedPointSet, idx: np.ndarray) -> tuple:
    # dilated cubes of neighbouring cubes often coincide; fit each subset once
    key = ("beta-fit", idx.tobytes())
    if key not in pset.derived:
        sub = np.ix_(idx, idx)
        pset.derived[key] = _fit(pset.points[idx], pset.dist_matrix[sub], pset.nh_matrix[sub])
    return pset.derived[key]


def beta_ball(pset: WeightedPointSet, x, r: float) -> BetaResult:
    """``beta_E(x, r)`` over the sample points in the closed ball ``B(x, r)``."""
    idx = pset.ball(x, r)
    if len(idx) == 0:
        raise ValueError("ball contains no sample points")
    return _result(pset.points[idx], _subset_fit(pset, idx), r, HPoint.of(x))


def _resolution(pset: WeightedPointSet, resolution: float | None) -> float:
    return pset.max_spacing if resolution is None else float(resolution)


def beta_cube(pset: WeightedPointSet, tree: CubeTree, q: Cube | int, lam: float = 10.0,
              resolution: float | None = None) -> float:
    """``beta(lam Q)``: sup over ``lam Q``, normalised by the nominal scale ``lam 2^-j(Q)``.

    ``resolution`` is passed to :func:`dilated_cube`; ``None`` uses the set's
    sample spacing and ``0`` the plain dilation.
    """
    return beta_cube_result(pset, tree, q, lam, resolution).value


def beta_cube_result(pset: WeightedPointSet, tree: CubeTree, q: Cube | int, lam: float = 10.0,
                     resolution: float | None = None) -> BetaResult:
    q = tree.cubes[q] if isinstance(q, int) else q
    idx = dilated_cube(tree, q, lam, pset, _resolution(pset, resolution))
    return _result(pset.points[idx], _subset_fit(pset, idx), lam * 2.0**-q.level, None)


def beta_table(pset: WeightedPointSet, tree: CubeTree, s: Cube | int, lam: float = 10.0,
               resolution: float | None = None) -> list[dict]:
    """One row per cube of ``Delta(S)``: id, level, beta, mu."""
    rows = []
    for q in tree.descendants(s):
        rows.append({
            "cube_id": q.id,
            "level": q.level,
            "beta": beta_cube(pset, tree, q, lam, resolution),
            "mu": pset.mass(q.members),
        })
    return rows


@dataclass
class TspResult:
    total: float
    mu_s: float
    rows: list[dict]
    exponent: float

    @property
    def ratio(self) -> float:
        return self.total / self.mu_s


def tsp_sum(pset: WeightedPointSet, tree: CubeTree, s: Cube | int, exponent: float = 4.0,
            lam: float = 10.0, table: list[dict] | None = None,
            resolution: float | None = None) -> TspResult:
    """``sum_{Q in Delta(S)} beta(lam Q)^exponent mu(Q)`` with ``mu(S)``.

    Pass a precomputed ``table`` from :func:`beta_table` to evaluate several
    exponents without re-optimising.
    """
    s = tree.cubes[s] if isinstance(s, int) else s
    if table is None:
        table = beta_table(pset, tree, s, lam, resolution)
    rows = [dict(r, term=r["beta"] ** exponent * r["mu"]) for r in table]
    total = math.fsum(r["term"] for r in rows)
    return TspResult(total, pset.mass(s.members), rows, exponent)


def format_beta_csv(result: TspResult) -> str:
    """``cube_id, level, beta, mu, term`` rows, then a totals row carrying ``mu(S)`` and the sum."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["cube_id", "level", "beta", "mu", "term"])
    for r in result.rows:
        w.writerow([r["cube_id"], r["level"], repr(r["beta"]), repr(r["mu"]), repr(r["term"])])
    w.writerow(["total", "", "", repr(result.mu_s), repr(result.total)])
    return buf.getvalue()


def write_beta_csv(result: TspResult, path) -> None:
    Path(path).write_text(format_beta_csv(result))
