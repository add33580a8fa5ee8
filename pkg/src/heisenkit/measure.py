"""Discrete approximations of H^1 restricted to a 1-regular set.

A :class:`WeightedPointSet` is a finite sample of a curve together with
quadrature weights, so that ``sum(w_i f(p_i))`` approximates the integral of
``f`` against arclength in the Korányi metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .heis import _koranyi, _mul, as_points, dilate, mul, pairwise

__all__ = [
    "WeightedPointSet",
    "lift_planar_curve",
    "chord_weights",
    "regularity_ratio",
    "horizontal_segment_set",
    "lifted_circle_set",
    "lifted_zigzag_set",
    "vertical_axis_set",
    "koch_polyline",
    "GENERATORS",
    "make_set",
    "save_pointset",
    "load_pointset",
    "format_pointset",
    "parse_pointset",
]

MIN_SEPARATION = 1e-12


@dataclass(frozen=True, eq=False)
class WeightedPointSet:
    """Points (``(n, 3)`` array), nonnegative weights and a provenance tag.

    Pairwise distance and NH matrices are computed lazily and cached; every
    downstream module reads them from here.
    """

    points: np.ndarray
    weights: np.ndarray
    provenance: str = "unspecified"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = as_points(np.array(self.points, dtype=float))
        if pts.ndim != 2:
            raise ValueError("points must be an (n, 3) array")
        w = np.array(self.weights, dtype=float).reshape(-1)
        if len(w) != len(pts):
            raise ValueError(f"{len(pts)} points but {len(w)} weights")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise ValueError("weights must be finite and nonnegative")
        if not w.sum() > 0:
            raise ValueError("total mass must be positive")
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        if len(pts) > 1:
            D = self.dist_matrix
            off = D + np.diag(np.full(len(pts), np.inf))
            i, j = np.unravel_index(np.argmin(off), off.shape)
            if off[i, j] < MIN_SEPARATION:
                raise ValueError(f"points {i} and {j} closer than {MIN_SEPARATION}")

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def _pair(self) -> tuple[np.ndarray, np.ndarray]:
        D, H = pairwise(self.points)
        D.setflags(write=False)
        H.setflags(write=False)
        return D, H

    @cached_property
    def derived(self) -> dict:
        """Scratch cache for matrices other modules derive from the set."""
        return {}

    @property
    def dist_matrix(self) -> np.ndarray:
        return self._pair[0]

    @property
    def nh_matrix(self) -> np.ndarray:
        """``nh_matrix[i, j] = NH(p_j^-1 p_i)`` (symmetric)."""
        return self._pair[1]

    @property
    def total_mass(self) -> float:
        return math.fsum(self.weights)

    @cached_property
    def diameter(self) -> float:
        return float(self.dist_matrix.max())

    @cached_property
    def max_spacing(self) -> float:
        """Largest nearest-neighbour distance (the sampling resolution)."""
        if len(self) < 2:
            return 0.0
        off = self.dist_matrix + np.diag(np.full(len(self), np.inf))
        return float(off.min(axis=1).max())

    def ball(self, center, r: float) -> np.ndarray:
        """Indices of points in the closed ball ``B(center, r)``."""
        c = as_points(center)
        d = _koranyi(_mul(-c, self.points))
        return np.flatnonzero(d <= r)

    def mass(self, indices) -> float:
        return math.fsum(self.weights[np.asarray(indices, dtype=int)])

    def translated(self, g) -> "WeightedPointSet":
        """Left translate by ``g``; weights are unchanged."""
        return WeightedPointSet(mul(g, self.points), self.weights, f"{self.provenance}|translate")

    def dilated(self, s: float) -> "WeightedPointSet":
        """Image under ``delta_s``; the measure scales by ``s``."""
        return WeightedPointSet(dilate(s, self.points), s * self.weights, f"{self.provenance}|dilate({s!r})")

    def with_weights(self, weights) -> "WeightedPointSet":
        return WeightedPointSet(self.points, weights, self.provenance, dict(self.meta))


def lift_planar_curve(samples, z0: float = 0.0) -> np.ndarray:
    """Horizontal lift of a planar polyline.

    Each straight piece gains ``dz = (x_mid dy - y_mid dx) / 2``, which is the
    exact lift of that segment: consecutive output points differ by a
    horizontal group element.
    """
    xy = np.asarray(samples, dtype=float)
    if xy.ndim != 2 or xy.shape[1] != 2 or len(xy) < 2:
        raise ValueError("need at least two planar samples of shape (k, 2)")
    if not np.all(np.isfinite(xy)):
        raise ValueError("non-finite planar sample")
    dxy = np.diff(xy, axis=0)
    if np.any(np.all(dxy == 0.0, axis=1)):
        raise ValueError("consecutive planar samples must be distinct")
    mid = 0.5 * (xy[1:] + xy[:-1])
    dz = 0.5 * (mid[:, 0] * dxy[:, 1] - mid[:, 1] * dxy[:, 0])
    z = np.concatenate([[float(z0)], float(z0) + np.cumsum(dz)])
    return np.column_stack([xy, z])


def chord_weights(points) -> np.ndarray:
    """Trapezoid-style weights: half of each adjacent chord, one-sided at the ends."""
    a = as_points(points)
    if len(a) < 2:
        raise ValueError("need at least two points")
    chords = _koranyi(_mul(-a[:-1], a[1:]))
    w = np.zeros(len(a))
    w[:-1] += 0.5 * chords
    w[1:] += 0.5 * chords
    return w


def regularity_ratio(pset: WeightedPointSet, radii) -> tuple[float, float]:
    """Min and max of ``mu(B(x, r)) / r`` over all sample centres and radii.

    Radii must lie in ``[4 * max_spacing, diam / 2]``; below that the count is
    dominated by discretisation.
    """
    radii = np.asarray(list(radii), dtype=float)
    if radii.size == 0:
        raise ValueError("radii must be non-empty")
    lo, hi = 4 * pset.max_spacing, pset.diameter / 2
    if np.any(radii < lo * (1 - 1e-12)) or np.any(radii > hi * (1 + 1e-12)):
        raise ValueError(f"radii must lie in [{lo:.6g}, {hi:.6g}]")
    D = pset.dist_matrix
    ratios = []
    for r in radii:
        mass = np.where(D <= r, pset.weights, 0.0).sum(axis=1)
        ratios.append(mass / r)
    ratios = np.concatenate(ratios)
    return float(ratios.min()), float(ratios.max())


def _params(n: int, seed: int | None) -> np.ndarray:
    """``n`` parameters in ``[0, 1]``: uniform grid, or stratified jitter under a seed.

    Jittered samples keep both endpoints so the sampled curve is the same set.
    """
    if seed is None:
        return np.linspace(0.0, 1.0, n)
    rng = np.random.default_rng(seed)
    cells = (np.arange(n - 2) + rng.uniform(0.1, 0.9, size=n - 2)) / (n - 2)
    return np.concatenate([[0.0], cells, [1.0]])


def _build(xy: np.ndarray, provenance: str, **meta) -> WeightedPointSet:
    pts = lift_planar_curve(xy)
    return WeightedPointSet(pts, chord_weights(pts), provenance, meta)


def _check_n(n: int) -> None:
    if int(n) != n or n < 16:
        raise ValueError(f"n must be an integer >= 16, got {n!r}")


def horizontal_segment_set(n: int, seed: int | None = None) -> WeightedPointSet:
    """``n`` samples of the unit horizontal segment from the origin along the x-axis."""
    _check_n(n)
    t = _params(n, seed)
    xy = np.column_stack([t, np.zeros_like(t)])
    return _build(xy, f"horizontal_segment(n={n}, seed={seed})", generator="horizontal_segment", n=n, seed=seed)


def lifted_circle_set(n: int, radius: float = 1.0, seed: int | None = None) -> WeightedPointSet:
    """Horizontal lift of one counter-clockwise loop of a planar circle.

    The loop starts and ends at ``(radius, 0)`` in the plane; the endpoint sits
    at height ``pi radius^2`` (approximately) above the start.
    """
    _check_n(n)
    if not radius > 0:
        raise ValueError("radius must be positive")
    t = 2 * np.pi * _params(n, seed)
    xy = radius * np.column_stack([np.cos(t), np.sin(t)])
    return _build(xy, f"lifted_circle(n={n}, radius={radius!r}, seed={seed})",
                  generator="lifted_circle", n=n, radius=radius, seed=seed)


def koch_polyline(depth: int) -> np.ndarray:
    """Vertices of the level-``depth`` Koch polyline on ``[0, 1]``."""
    if int(depth) != depth or not 0 <= depth <= 5:
        raise ValueError(f"depth must be an integer in [0, 5], got {depth!r}")
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    rot = np.array([[0.5, -math.sqrt(3) / 2], [math.sqrt(3) / 2, 0.5]])
    for _ in range(depth):
        a, b = pts[:-1], pts[1:]
        d = (b - a) / 3
        p1 = a + d
        p3 = a + 2 * d
        p2 = p1 + d @ rot.T
        new = np.stack([a, p1, p2, p3], axis=1).reshape(-1, 2)
        pts = np.vstack([new, pts[-1:]])
    return pts


def _resample_polyline(vertices: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Arclength samples at parameters ``t``, with the nearest sample moved onto
    each vertex when that sample is unambiguous, so corners are not cut."""
    seg = np.linalg.norm(np.diff(vertices, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    target = t * s[-1]
    near = np.abs(target[None, :] - s[1:-1, None]).argmin(axis=1)
    if len(np.unique(near)) == len(near) and not np.any(np.isin(near, [0, len(t) - 1])):
        target = target.copy()
        target[near] = s[1:-1]
    x = np.interp(target, s, vertices[:, 0])
    y = np.interp(target, s, vertices[:, 1])
    return np.column_stack([x, y])


def lifted_zigzag_set(n: int, depth: int = 2, seed: int | None = None) -> WeightedPointSet:
    """Horizontal lift of ``n`` arclength-equispaced samples of a Koch polyline.

    Polyline vertices are sampled exactly whenever ``n`` is large enough to
    give each its own sample, so the sampled path is the polyline itself.

    ``depth = 0`` is the unit horizontal segment.
    """
    _check_n(n)
    xy = _resample_polyline(koch_polyline(depth), _params(n, seed))
    return _build(xy, f"lifted_zigzag(n={n}, depth={depth}, seed={seed})",
                  generator="lifted_zigzag", n=n, depth=depth, seed=seed)


def vertical_axis_set(n: int) -> WeightedPointSet:
    """``(0, 0, k/n)`` for ``k = 0..n``; a diagnostic set that is *not* 1-regular."""
    _check_n(n)
    z = np.arange(n + 1) / n
    pts = np.column_stack([np.zeros_like(z), np.zeros_like(z), z])
    return WeightedPointSet(pts, chord_weights(pts), f"vertical_axis(n={n})", {"generator": "vertical_axis", "n": n})


GENERATORS = {
    "horizontal_segment": horizontal_segment_set,
    "lifted_circle": lifted_circle_set,
    "lifted_zigzag": lifted_zigzag_set,
    "vertical_axis": vertical_axis_set,
}


def make_set(name: str, **params) -> WeightedPointSet:
    try:
        gen = GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}") from None
    return gen(**params)


HEADER = "heis-pointset v1 n={n}"


def format_pointset(pset: WeightedPointSet) -> str:
    lines = [HEADER.format(n=len(pset))]
    for (x, y, z), w in zip(pset.points, pset.weights):
        lines.append(f"{x:.17g} {y:.17g} {z:.17g} {w:.17g}")
    return "\n".join(lines) + "\n"


def parse_pointset(text: str, provenance: str = "text") -> WeightedPointSet:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty point-set file")
    head = lines[0].split()
    if len(head) != 3 or head[:2] != ["heis-pointset", "v1"] or not head[2].startswith("n="):
        raise ValueError(f"bad header line: {lines[0]!r}")
    n = int(head[2][2:])
    rows = np.array([[float(v) for v in ln.split()] for ln in lines[1:]], dtype=float).reshape(-1, 4)
    if len(rows) != n:
        raise ValueError(f"header announces {n} points, found {len(rows)}")
    return WeightedPointSet(rows[:, :3], rows[:, 3], provenance)


def save_pointset(pset: WeightedPointSet, path) -> None:
    Path(path).write_text(format_pointset(pset))


def load_pointset(path) -> WeightedPointSet:
    return parse_pointset(Path(path).read_text(), provenance=f"file:{path}")
