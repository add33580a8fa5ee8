"""Heisenberg group arithmetic in exponential coordinates.

Every function accepts either an :class:`HPoint` or a float array whose last
axis has length 3, and broadcasts over leading axes.  When all point arguments
are ``HPoint`` instances the result is an ``HPoint`` (or a Python float for
scalar quantities); otherwise plain ``numpy`` arrays come back.

Group law::

    (x, y, z) . (x', y', z') = (x + x', y + y', z + z' + (x y' - y x') / 2)

Horizontal directions are therefore spanned by ``d/dx - (y/2) d/dz`` and
``d/dy + (x/2) d/dz``; the lift in :mod:`heisenkit.measure` uses the same
convention.
"""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HPoint",
    "HorizontalLine",
    "ORIGIN",
    "as_points",
    "mul",
    "inv",
    "dilate",
    "koranyi",
    "nh",
    "gauges",
    "dist",
    "dist_projected",
    "pairwise",
    "proj_plane",
    "proj_horizontal",
    "line_sample",
    "horizontal_segment",
    "dist_to_line",
]


class HPoint(namedtuple("_HPoint", "x y z")):
    """Immutable point of the Heisenberg group; coordinates must be finite."""

    __slots__ = ()

    def __new__(cls, x: float, y: float, z: float) -> "HPoint":
        x, y, z = float(x), float(y), float(z)
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            raise ValueError(f"non-finite coordinate in HPoint({x}, {y}, {z})")
        return super().__new__(cls, x, y, z)

    @classmethod
    def of(cls, p) -> "HPoint":
        x, y, z = np.asarray(p, dtype=float).reshape(3)
        return cls(x, y, z)

    def __array__(self, dtype=None, copy=None):
        return np.array(tuple(self), dtype=dtype or float)


ORIGIN = HPoint(0.0, 0.0, 0.0)


def as_points(p) -> np.ndarray:
    """Coerce to a float array with trailing axis 3, rejecting NaN/inf."""
    a = np.asarray(p, dtype=float)
    if a.shape[-1:] != (3,):
        raise ValueError(f"expected trailing axis of length 3, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite coordinates are not admitted")
    return a


def _all_hpoints(*ps) -> bool:
    return all(isinstance(p, HPoint) for p in ps)


def _point_out(a: np.ndarray, *inputs):
    if _all_hpoints(*inputs):
        return HPoint(*a)
    return a


def _scalar_out(a, *inputs):
    if _all_hpoints(*inputs):
        return float(a)
    return a


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    x, y, z = a[..., 0], a[..., 1], a[..., 2]
    u, v, w = b[..., 0], b[..., 1], b[..., 2]
    return np.stack([x + u, y + v, z + w + 0.5 * (x * v - y * u)], axis=-1)


def mul(p, q):
    """Group product ``p . q``."""
    return _point_out(_mul(as_points(p), as_points(q)), p, q)


def inv(p):
    """Group inverse ``(-x, -y, -z)``."""
    return _point_out(-as_points(p), p)


def dilate(r: float, p):
    """Dilation ``(r x, r y, r^2 z)``.

    Negative (or zero) ``r`` is only meaningful for horizontal points, where it
    is the linear map on the plane; it is rejected otherwise.
    """
    a = as_points(p)
    r = float(r)
    if r <= 0 and np.any(a[..., 2] != 0.0):
        raise ValueError("dilation by r <= 0 is only defined for horizontal points")
    out = np.stack([r * a[..., 0], r * a[..., 1], r * r * a[..., 2]], axis=-1)
    return _point_out(out, p)


def _koranyi_rescaled(a: np.ndarray) -> np.ndarray:
    # evaluate at unit homogeneous size so no intermediate under- or overflows
    h = np.hypot(a[..., 0], a[..., 1])
    s = np.maximum(h, np.sqrt(np.abs(a[..., 2])))
    safe = np.where(s > 0, s, 1.0)
    n = safe * np.sqrt(np.hypot((h / safe) ** 2, a[..., 2] / safe / safe))
    return np.where(s > 0, np.maximum(n, s), 0.0)


def _koranyi(a: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", under="ignore"):
        n = np.sqrt(np.hypot(a[..., 0] ** 2 + a[..., 1] ** 2, a[..., 2]))
    bad = ~((n > 1e-100) & (n < 1e100)) & np.any(a != 0, axis=-1)
    if np.any(bad):
        n = np.asarray(n, dtype=float).copy()
        n[bad] = _koranyi_rescaled(np.asarray(a)[bad])
    return n


def _nh(a: np.ndarray) -> np.ndarray:
    return np.sqrt(np.abs(a[..., 2]))


def koranyi(p):
    """Korányi norm ``((x^2 + y^2)^2 + z^2)^(1/4)``."""
    return _scalar_out(_koranyi(as_points(p)), p)


def nh(p):
    """Non-horizontal gauge ``|z|^(1/2)``."""
    return _scalar_out(_nh(as_points(p)), p)


def _omega(n: np.ndarray, h: np.ndarray) -> np.ndarray:
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(n > 0, h / np.where(n > 0, n, 1.0), 0.0)


def gauges(p):
    """Return ``(N, NH, Omega)``; ``Omega(0)`` is taken to be 0."""
    a = as_points(p)
    n, h = _koranyi(a), _nh(a)
    om = _omega(n, h)
    return _scalar_out(n, p), _scalar_out(h, p), _scalar_out(om, p)


def dist(p, q):
    """Left-invariant Korányi distance ``N(q^-1 . p)``."""
    a, b = as_points(p), as_points(q)
    return _scalar_out(_koranyi(_mul(-b, a)), p, q)


def dist_projected(p, q):
    """Same metric written as ``(|pi(p) - pi(q)|^4 + NH(p^-1 q)^4)^(1/4)``."""
    a, b = as_points(p), as_points(q)
    planar = np.hypot(a[..., 0] - b[..., 0], a[..., 1] - b[..., 1])
    vert = _nh(_mul(-a, b))
    return _scalar_out(np.sqrt(np.hypot(planar**2, vert**2)), p, q)


def pairwise(points) -> tuple[np.ndarray, np.ndarray]:
    """Distance and NH matrices ``D[i, j] = d(p_i, p_j)``, ``H[i, j] = NH(p_j^-1 p_i)``."""
    a = as_points(points)
    x, y, z = a[:, 0], a[:, 1], a[:, 2]
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    # vertical coordinate of p_j^-1 . p_i
    dz = z[:, None] - z[None, :] + 0.5 * (y[None, :] * x[:, None] - x[None, :] * y[:, None])
    D = np.sqrt(np.hypot(dx * dx + dy * dy, dz))
    H = np.sqrt(np.abs(dz))
    return D, H


def proj_plane(p):
    """``pi(x, y, z) = (x, y)``."""
    a = as_points(p)
    out = a[..., :2].copy()
    if isinstance(p, HPoint):
        return float(out[0]), float(out[1])
    return out


def proj_horizontal(p):
    """``(x, y, 0)``; not a homomorphism."""
    a = as_points(p).copy()
    a[..., 2] = 0.0
    return _point_out(a, p)


def _line_stationary(b: np.ndarray, h0: np.ndarray) -> np.ndarray:
    """Unique real root of ``4t^3 + (9/2) b^2 t + b h0 = 0``.

    The quartic ``(t^2 + b^2)^2 + (h0 + t b / 2)^2`` it differentiates is
    strictly convex, so this root is its global minimiser.
    """
    P = 1.125 * b * b
    Q = 0.25 * b * h0
    tiny = np.finfo(float).tiny ** 0.5
    safe_P = np.where(P > tiny, P, 1.0)
    with np.errstate(over="ignore", invalid="ignore"):
        arg = 1.5 * Q / safe_P * np.sqrt(3.0 / safe_P)
        t = -2.0 * np.sqrt(safe_P / 3.0) * np.sinh(np.arcsinh(arg) / 3.0)
    t = np.where(P > tiny, t, np.cbrt(-Q))
    t = np.where(np.isfinite(t), t, np.cbrt(-Q))
    for _ in range(2):
        f = t * t * t + P * t + Q
        fp = 3.0 * t * t + P
        with np.errstate(invalid="ignore", divide="ignore"):
            step = np.where(fp > 0, f / np.where(fp > 0, fp, 1.0), 0.0)
        t = t - step
    return t


def _dist_to_line(w: np.ndarray, base: np.ndarray, theta: float) -> tuple[np.ndarray, np.ndarray]:
    return _dist_to_line_cs(w, base, math.cos(theta), math.sin(theta))


def _dist_to_line_cs(w, base, c, s) -> tuple[np.ndarray, np.ndarray]:
    """Broadcasting core: ``w`` (..., 3), ``base`` (..., 3), direction ``(c, s)``."""
    u = _mul(-base, w)
    a = u[..., 0] * c + u[..., 1] * s
    b = s * u[..., 0] - c * u[..., 1]
    h0 = u[..., 2] + 0.5 * a * b
    t = _line_stationary(b, h0)
    g = np.hypot(t * t + b * b, h0 + 0.5 * t * b)
    return np.sqrt(g), a + t


@dataclass(frozen=True, eq=False)
class HorizontalLine:
    """The horizontal line ``{base . delta_r(cos theta, sin theta, 0) : r real}``.

    On construction ``theta`` is reduced to ``[0, pi)`` and ``base`` is moved
    along the line to the point closest to the origin, so two descriptions of
    the same set end up with (numerically) equal fields.
    """

    base: HPoint
    theta: float

    def __post_init__(self):
        theta = float(self.theta)
        if not math.isfinite(theta):
            raise ValueError("theta must be finite")
        theta = math.fmod(theta, math.pi)
        if theta < 0:
            theta += math.pi
        if theta >= math.pi:
            theta = 0.0
        base = np.asarray(HPoint.of(self.base))
        _, r0 = _dist_to_line(np.zeros(3), base, theta)
        canon = _mul(base, np.array([r0 * math.cos(theta), r0 * math.sin(theta), 0.0]))
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "base", HPoint(*canon))

    __hash__ = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, HorizontalLine):
            return NotImplemented
        # compare (theta, offset, height): the canonical base itself is
        # ill-conditioned when the distance to the origin is flat along the line
        t1, o1, h1 = self.params()
        t2, o2, h2 = other.params()
        dt = abs(t1 - t2)
        if dt > math.pi / 2:
            dt, o2 = math.pi - dt, -o2
        if dt > 1e-9:
            return False
        scale = max(1.0, koranyi(self.base), koranyi(other.base))
        return abs(o1 - o2) <= 1e-9 * scale and abs(h1 - h2) <= 1e-9 * scale * scale

    @property
    def direction(self) -> HPoint:
        return HPoint(math.cos(self.theta), math.sin(self.theta), 0.0)

    @classmethod
    def from_params(cls, theta: float, offset: float, height: float) -> "HorizontalLine":
        """Line with direction ``theta`` whose planar projection passes at signed
        distance ``offset`` from the origin, at height ``height`` over the foot
        point ``offset * (-sin theta, cos theta)``."""
        return cls(HPoint(-offset * math.sin(theta), offset * math.cos(theta), height), theta)

    def params(self) -> tuple[float, float, float]:
        """Inverse of :meth:`from_params`: ``(theta, offset, height)``."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        bx, by, bz = self.base
        r = -(bx * c + by * s)
        foot = _mul(np.array(self.base), np.array([r * c, r * s, 0.0]))
        return self.theta, -bx * s + by * c, float(foot[2])

    @classmethod
    def through(cls, p, q) -> "HorizontalLine":
        """The horizontal line through ``p`` in the planar direction of ``p^-1 q``."""
        a, b = as_points(p), as_points(q)
        dx, dy = b[0] - a[0], b[1] - a[1]
        if dx == 0.0 and dy == 0.0:
            raise ValueError("p and q have the same planar projection")
        return cls(HPoint(*a), math.atan2(dy, dx))


def line_sample(L: HorizontalLine, r_values) -> np.ndarray:
    """Points ``L.base . delta_r(e_theta)`` for each ``r``; shape ``(k, 3)``."""
    r = np.asarray(r_values, dtype=float).reshape(-1)
    c, s = math.cos(L.theta), math.sin(L.theta)
    steps = np.stack([r * c, r * s, np.zeros_like(r)], axis=-1)
    return _mul(np.broadcast_to(np.array(L.base), steps.shape), steps)


def horizontal_segment(p, q, k: int) -> np.ndarray:
    """``k`` equally spaced points of ``p . delta_r(pi~(p^-1 q))``, ``r in [0, 1]``.

    When ``p^-1 q`` is vertical the segment degenerates to ``k`` copies of ``p``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    a, b = as_points(p), as_points(q)
    v = _mul(-a, b)
    r = np.linspace(0.0, 1.0, k)
    steps = np.stack([r * v[0], r * v[1], np.zeros_like(r)], axis=-1)
    return _mul(np.broadcast_to(a, steps.shape), steps)


def dist_to_line(w, L: HorizontalLine):
    """Distance from ``w`` to ``L`` and the minimising line parameter ``r``.

    Along the line ``N(L(r)^-1 w)^4`` is a strictly convex quartic in ``r``;
    its unique stationary point is found in closed form (hyperbolic form of
    Cardano's formula) and polished by Newton steps.
    """
    d, r = _dist_to_line(as_points(w), np.asarray(L.base), L.theta)
    if isinstance(w, HPoint):
        return float(d), float(r)
    return d, r
