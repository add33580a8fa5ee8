"""Triples of points: Menger curvature, defect, vertical ratios, and triple sums.

For a triple with Korányi side lengths ``a, b, c``:

* ``defect = a + b + c - 2 max(a, b, c)`` (zero exactly on metrically
  collinear triples);
* ``menger = 1 / R`` of the planar triangle with the same side lengths
  (Kahan's stable Heron formula, 0 when degenerate);
* the vertical ratios ``NH(p_i^-1 p_j) / d(p_i, p_j)``, of which ``gamma1``
  is the largest and ``gamma2`` the second largest.

A triple is non-degenerate at ratio ``alpha`` when its shortest side is at
least ``alpha`` times its longest.  Triple sums run over ordered triples of
distinct points, six per unordered triple; the factor is reported in the
result rather than divided out.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .heis import HorizontalLine, _dist_to_line_cs, _koranyi, _mul, _nh, _all_hpoints, as_points
from .measure import WeightedPointSet

__all__ = [
    "TripleStats",
    "triple_stats",
    "menger_from_sides",
    "defect_from_sides",
    "nh2_triangle_check",
    "two_point_line_margin",
    "StripReport",
    "strip_lemma_check",
    "strip_lemma_margins",
    "in_sigma",
    "partial_nh1_ratio",
    "c2_partial_ratio",
    "gamma_domination_gap",
    "GAMMA_FACTOR",
    "sample_sigma_triples",
    "sample_strip_triples",
    "sample_sigma_sides",
    "sigma_triples",
    "count_sigma_triples",
    "TripleSums",
    "triple_functionals",
    "ChainReport",
    "domination_chain",
    "format_functionals_csv",
    "write_functionals_csv",
    "EXACT_CAP",
    "ORDERED_FACTOR",
]

EXACT_CAP = 300
ORDERED_FACTOR = 6


def GAMMA_FACTOR(alpha: float) -> float:
    """Pointwise factor in ``gamma1^2 gamma2^2 / diam^2 <= k * sum_perm NH^2 NH^2 / diam^6``.

    Each side is at least ``alpha diam`` and the permutation sum counts every
    pair of sides twice, so ``k = alpha^-4 / 2``.
    """
    return 0.5 / alpha**4


def _sort3(a, b, c):
    lo = np.minimum(np.minimum(a, b), c)
    hi = np.maximum(np.maximum(a, b), c)
    mid = np.maximum(np.minimum(a, b), np.minimum(np.maximum(a, b), c))
    return hi, mid, lo


def menger_from_sides(a, b, c):
    """``4 A / (a b c)`` for the planar triangle with sides ``a, b, c``; 0 if degenerate."""
    a, b, c = (np.asarray(v, dtype=float) for v in (a, b, c))
    x, y, z = _sort3(a, b, c)
    # Kahan: x >= y >= z, brackets matter
    prod = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z))
    area = 0.25 * np.sqrt(np.maximum(prod, 0.0))
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(area > 0, 4.0 * area / (a * b * c), 0.0)
    return float(out) if out.ndim == 0 else out


def defect_from_sides(a, b, c):
    a, b, c = (np.asarray(v, dtype=float) for v in (a, b, c))
    hi, mid, lo = _sort3(a, b, c)
    out = np.maximum((lo + mid) - hi, 0.0)
    return float(out) if out.ndim == 0 else out


def _ratio(h, d):
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(d > 0, h / np.where(d > 0, d, 1.0), 0.0)


@dataclass(frozen=True)
class TripleStats:
    d12: float
    d23: float
    d13: float
    diam: float
    area: float
    nh12: float
    nh23: float
    nh13: float
    gamma1: float
    gamma2: float
    defect: float
    menger: float


def _pair(p, q):
    u = _mul(-q, p)
    return _koranyi(u), _nh(u)


def _planar_area(p1, p2, p3):
    ux, uy = p2[..., 0] - p1[..., 0], p2[..., 1] - p1[..., 1]
    vx, vy = p3[..., 0] - p1[..., 0], p3[..., 1] - p1[..., 1]
    return 0.5 * np.abs(ux * vy - uy * vx)


def triple_stats(p1, p2, p3) -> TripleStats:
    """All triple quantities; array inputs give array fields."""
    a1, a2, a3 = as_points(p1), as_points(p2), as_points(p3)
    d12, h12 = _pair(a1, a2)
    d23, h23 = _pair(a2, a3)
    d13, h13 = _pair(a1, a3)
    if np.any(d12 == 0) or np.any(d23 == 0) or np.any(d13 == 0):
        raise ValueError("triple has coincident points")
    r12, r23, r13 = _ratio(h12, d12), _ratio(h23, d23), _ratio(h13, d13)
    g1, g2, _ = _sort3(r12, r23, r13)
    fields = dict(
        d12=d12, d23=d23, d13=d13, diam=np.maximum(np.maximum(d12, d23), d13),
        area=_planar_area(a1, a2, a3), nh12=r12, nh23=r23, nh13=r13, gamma1=g1, gamma2=g2,
        defect=defect_from_sides(d12, d23, d13), menger=menger_from_sides(d12, d23, d13),
    )
    if _all_hpoints(p1, p2, p3):
        fields = {k: float(v) for k, v in fields.items()}
    return TripleStats(**fields)


def nh2_triangle_check(a, b, c) -> np.ndarray:
    """Margins of the four-term inequality between ``A`` and the three ``NH^2``.

    The terms are the planar area ``A`` of the projected triangle and
    ``NH(a^-1 b)^2, NH(b^-1 c)^2, NH(c^-1 a)^2``.  Each margin is the sum of
    three terms minus the fourth; all are ``>= 0``.  Shape ``(..., 4)``.
    """
    pa, pb, pc = as_points(a), as_points(b), as_points(c)
    terms = np.stack([
        _planar_area(pa, pb, pc),
        np.abs(_mul(-pa, pb)[..., 2]),
        np.abs(_mul(-pb, pc)[..., 2]),
        np.abs(_mul(-pc, pa)[..., 2]),
    ], axis=-1)
    return terms.sum(axis=-1, keepdims=True) - 2.0 * terms


def two_point_line_margin(a, b, L):
    """``max(d(a, L), d(b, L)) - NH(a^-1 b)^2 / (16 d(a, b))``.

    ``L`` is a :class:`HorizontalLine` or a ``(base, theta)`` pair of arrays
    for vectorised use.
    """
    pa, pb = as_points(a), as_points(b)
    if isinstance(L, HorizontalLine):
        base, theta = np.asarray(L.base), L.theta
    else:
        base, theta = as_points(L[0]), np.asarray(L[1], dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    da, _ = _dist_to_line_cs(pa, base, c, s)
    db, _ = _dist_to_line_cs(pb, base, c, s)
    d, h = _pair(pa, pb)
    if np.any(d == 0):
        raise ValueError("the two points must differ")
    out = np.maximum(da, db) - h * h / (16.0 * d)
    return float(out) if _all_hpoints(a, b) else out


def _line_gap(p, q1, q2):
    """Euclidean distance of ``pi(p)`` to the planar line through ``pi(q1), pi(q2)``."""
    ux, uy = q2[..., 0] - q1[..., 0], q2[..., 1] - q1[..., 1]
    vx, vy = p[..., 0] - q1[..., 0], p[..., 1] - q1[..., 1]
    n = np.hypot(ux, uy)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(n > 0, np.abs(ux * vy - uy * vx) / np.where(n > 0, n, 1.0), np.hypot(vx, vy))


def strip_lemma_margins(p1, p2, p3, alpha, eps):
    """Vectorised strip check: ``(applicable, margins)``.

    ``margins[..., i] = 16 eps^2 r / alpha - dist(pi(p_i), line through the
    other two projections)`` with ``r`` the triple's diameter.  Triples that
    fail the hypotheses (non-degenerate at ``alpha``, every vertical ratio at
    most ``eps``, ``eps < 1/2``) are flagged not applicable.
    """
    a1, a2, a3 = as_points(p1), as_points(p2), as_points(p3)
    alpha = np.asarray(alpha, dtype=float)
    eps = np.asarray(eps, dtype=float)
    d12, h12 = _pair(a1, a2)
    d23, h23 = _pair(a2, a3)
    d13, h13 = _pair(a1, a3)
    r = np.maximum(np.maximum(d12, d23), d13)
    lo = np.minimum(np.minimum(d12, d23), d13)
    g1, _, _ = _sort3(_ratio(h12, d12), _ratio(h23, d23), _ratio(h13, d13))
    applicable = (lo > 0) & (lo >= alpha * r) & (g1 <= eps) & (eps < 0.5)
    bound = 16.0 * eps**2 * r / np.where(alpha > 0, alpha, 1.0)
    gaps = np.stack([_line_gap(a1, a2, a3), _line_gap(a2, a1, a3), _line_gap(a3, a1, a2)], axis=-1)
    return applicable, bound[..., None] - gaps


@dataclass
class StripReport:
    applicable: bool
    margins: tuple[float, float, float]
    bound: float

    @property
    def ok(self) -> bool:
        return not self.applicable or min(self.margins) >= -1e-9 * max(self.bound, 1.0)


def strip_lemma_check(p1, p2, p3, alpha: float, eps: float) -> StripReport:
    applicable, margins = strip_lemma_margins(p1, p2, p3, alpha, eps)
    a1, a2, a3 = as_points(p1), as_points(p2), as_points(p3)
    r = max(float(_koranyi(_mul(-q, p))) for p, q in ((a1, a2), (a2, a3), (a1, a3)))
    return StripReport(bool(applicable), tuple(float(m) for m in margins), 16.0 * eps**2 * r / alpha)


def in_sigma(d12, d23, d13, alpha: float):
    """Non-degeneracy at ratio ``alpha``: shortest side ``>= alpha *`` longest, all positive."""
    hi, _, lo = _sort3(np.asarray(d12), np.asarray(d23), np.asarray(d13))
    return (lo > 0) & (lo >= alpha * hi)


def partial_nh1_ratio(p1, p2, p3, alpha: float):
    """``defect / (gamma1^4 diam)`` with ``0 / 0 = 0``; triples must be non-degenerate."""
    st = triple_stats(p1, p2, p3)
    if not np.all(in_sigma(st.d12, st.d23, st.d13, alpha)):
        raise ValueError(f"triple is degenerate at ratio {alpha}")
    return _defect_gamma_ratio(np.asarray(st.defect), np.asarray(st.gamma1), np.asarray(st.diam), scalar=_all_hpoints(p1, p2, p3))


def _defect_gamma_ratio(defect, g1, diam, scalar=False):
    den = g1**4 * diam
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(den > 0, defect / np.where(den > 0, den, 1.0), np.where(defect > 0, np.inf, 0.0))
    return float(out) if scalar else out


def c2_partial_ratio(a, b, c):
    """``menger^2 diam^3 / defect`` from side lengths, with ``0 / 0 = 0``."""
    a, b, c = (np.asarray(v, dtype=float) for v in (a, b, c))
    m = menger_from_sides(a, b, c)
    dfc = defect_from_sides(a, b, c)
    diam = np.maximum(np.maximum(a, b), c)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(dfc > 0, m * m * diam**3 / np.where(dfc > 0, dfc, 1.0), np.where(m > 0, np.inf, 0.0))
    return float(out) if out.ndim == 0 else out


def gamma_domination_gap(alpha: float, g1, g2, diam, h12, h23, h13):
    """``k(alpha) * sum_perm NH^2 NH^2 / diam^6 - gamma1^2 gamma2^2 / diam^2`` (NH values, not ratios)."""
    perm = 2.0 * (h12**2 * h23**2 + h12**2 * h13**2 + h13**2 * h23**2) / diam**6
    return GAMMA_FACTOR(alpha) * perm - g1**2 * g2**2 / diam**2


# samplers -------------------------------------------------------------------


def _relative_steps(rng, n, lo=-6, hi=1):
    rel = rng.uniform(-1, 1, size=(n, 3))
    rel[:, 2] *= 10.0 ** rng.uniform(lo, hi, size=n)
    return rel


def sample_sigma_triples(rng: np.random.Generator, n: int, alpha: float):
    """``n`` random triples non-degenerate at ``alpha``, by rejection.

    Vertical offsets are mixed log-uniformly so nearly horizontal triples,
    where the vertical ratios are small, are well represented.
    """
    out = [np.empty((0, 3))] * 3
    have = 0
    while have < n:
        m = 2 * (n - have) + 64
        p1 = rng.uniform(-1, 1, size=(m, 3))
        p2 = _mul(p1, _relative_steps(rng, m))
        p3 = _mul(p1, _relative_steps(rng, m))
        d12, _ = _pair(p1, p2)
        d23, _ = _pair(p2, p3)
        d13, _ = _pair(p1, p3)
        keep = in_sigma(d12, d23, d13, alpha)
        out = [np.vstack([o, p[keep]]) for o, p in zip(out, (p1, p2, p3))]
        have = len(out[0])
    return tuple(o[:n] for o in out)


def sample_strip_triples(rng: np.random.Generator, n: int):
    """Thin, nearly horizontal triples with random ``(alpha, eps)``, kept when the strip hypotheses hold.

    Returns ``(p1, p2, p3, alpha, eps)``.  The third planar point sits off
    the line through the first two by up to about the width of the strip,
    and the vertical parts of the pair differences are at most ``(eps d)^2``.
    """
    cols = [[] for _ in range(5)]
    have = 0
    while have < n:
        m = 4 * (n - have) + 256
        # three nearly collinear points cannot have every side above half the longest
        alpha = rng.uniform(0.05, 0.49, size=m)
        eps = rng.uniform(0.005, 0.5, size=m)
        q1 = rng.uniform(-1, 1, size=(m, 2))
        ang = rng.uniform(0, 2 * np.pi, size=m)
        u = np.stack([np.cos(ang), np.sin(ang)], axis=-1)
        r = rng.uniform(0.01, 1.0, size=m)
        t = rng.uniform(alpha, 1 - alpha)
        off = rng.uniform(-1, 1, size=m) * 10.0 ** rng.uniform(-4, np.log10(32), size=m) * eps**2 * r
        q2 = q1 + r[:, None] * u
        q3 = q1 + (t * r)[:, None] * u + off[:, None] * np.stack([-u[:, 1], u[:, 0]], axis=-1)
        p1 = np.column_stack([q1, np.zeros(m)])
        lift = lambda q, v: np.column_stack([q, 0.5 * (q1[:, 0] * q[:, 1] - q1[:, 1] * q[:, 0]) + v])
        v2 = rng.uniform(-1, 1, size=m) * (eps * r) ** 2
        v3 = rng.uniform(-1, 1, size=m) * (eps * r) ** 2
        p2, p3 = lift(q2, v2), lift(q3, v3)
        ok, _ = strip_lemma_margins(p1, p2, p3, alpha, eps)
        for col, arr in zip(cols, (p1, p2, p3, alpha, eps)):
            col.append(arr[ok])
        have += int(ok.sum())
    return tuple(np.concatenate(c)[:n] for c in cols)


def sample_sigma_sides(rng: np.random.Generator, n: int, alpha: float) -> np.ndarray:
    """Side lengths ``(n, 3)`` of planar triangles with longest side 1, non-degenerate at ``alpha``.

    Half the sample is pushed towards the degenerate boundary ``b + c = 1``.
    """
    out, have = [], 0
    while have < n:
        m = 2 * (n - have) + 64
        b = rng.uniform(alpha, 1, size=m)
        c = rng.uniform(alpha, 1, size=m)
        thin = rng.random(m) < 0.5
        c = np.where(thin, np.maximum(1 - b, alpha) + 10.0 ** rng.uniform(-12, 0, size=m) * (b - np.maximum(1 - b, alpha)), c)
        keep = (b + c >= 1) & (c <= 1) & (c >= alpha)
        out.append(np.column_stack([np.ones(keep.sum()), b[keep], c[keep]]))
        have += int(keep.sum())
    return np.vstack(out)[:n]


# triple streams and sums -------------------------------------------------------


def _ball_indices(pset: WeightedPointSet, center, R: float) -> np.ndarray:
    if center is None:
        return np.arange(len(pset))
    return pset.ball(center, R)


def _blocks(D: np.ndarray, alpha: float):
    """For each first index ``i``: ``(i, mask over (j, k))`` of non-degenerate ordered triples."""
    for i in range(len(D)):
        a = D[i][:, None]
        c = D[i][None, :]
        yield i, in_sigma(a, D, c, alpha)


def sigma_triples(pset: WeightedPointSet, alpha: float, center=None, R: float = np.inf):
    """Ordered triples of distinct points of ``B(center, R)`` non-degenerate at ``alpha``.

    Yields one ``(k, 3)`` array of set indices per first index.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    idx = _ball_indices(pset, center, R)
    D = pset.dist_matrix[np.ix_(idx, idx)]
    for i, mask in _blocks(D, alpha):
        j, k = np.nonzero(mask)
        if len(j):
            yield np.column_stack([np.full(len(j), idx[i]), idx[j], idx[k]])


def count_sigma_triples(pset: WeightedPointSet, alpha: float, center=None, R: float = np.inf) -> int:
    return sum(len(t) for t in sigma_triples(pset, alpha, center, R))


def _integrands(a, b, c, ha, hb, hc):
    """Menger squared, gamma term and permutation term on broadcast arrays."""
    diam = np.maximum(np.maximum(a, b), c)
    m = menger_from_sides(a, b, c)
    g1, g2, _ = _sort3(_ratio(ha, a), _ratio(hb, b), _ratio(hc, c))
    gamma = g1**2 * g2**2 / diam**2
    ha2, hb2, hc2 = ha * ha, hb * hb, hc * hc
    perm = 2.0 * (ha2 * hb2 + ha2 * hc2 + hb2 * hc2) / diam**6
    return m * m, gamma, perm


@dataclass
class TripleSums:
    menger_sum: float
    gamma_sum: float
    nh_perm_sum: float
    n_triples: int
    n_points: int
    mode: str
    alpha: float
    R: float
    center: list[float] | None
    seed: int | None = None
    samples: int = 0
    menger_se: float = 0.0
    gamma_se: float = 0.0
    nh_perm_se: float = 0.0
    ordered_factor: int = ORDERED_FACTOR

    @property
    def gamma_ratio(self) -> float:
        """``gamma_sum / nh_perm_sum`` (0 when both vanish)."""
        return self.gamma_sum / self.nh_perm_sum if self.nh_perm_sum > 0 else 0.0

    def as_dict(self) -> dict:
        out = asdict(self)
        out["gamma_ratio"] = self.gamma_ratio
        return out


def triple_functionals(pset: WeightedPointSet, alpha: float, center=None, R: float = np.inf, *,
                       mode: str = "exact", cap: int = EXACT_CAP, seed: int | None = None,
                       samples: int = 200_000) -> TripleSums:
    """Weighted sums of the three integrands over non-degenerate ordered triples in ``B(center, R)``.

    ``mode="exact"`` enumerates every triple (at most ``cap`` points);
    ``mode="mc"`` draws ``samples`` triples i.i.d. from the normalised
    weights and reports standard errors.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    idx = _ball_indices(pset, center, R)
    D = pset.dist_matrix[np.ix_(idx, idx)]
    H = pset.nh_matrix[np.ix_(idx, idx)]
    w = pset.weights[idx]
    cen = None if center is None else [float(v) for v in as_points(center)]
    common = dict(n_points=len(idx), alpha=float(alpha), R=float(R), center=cen)
    if mode == "exact":
        if len(idx) > cap:
            raise ValueError(f"{len(idx)} points exceed the exact-mode cap {cap}; use mode='mc'")
        parts = ([], [], [])
        count = 0
        for i, mask in _blocks(D, alpha):
            j, k = np.nonzero(mask)
            if not len(j):
                continue
            count += len(j)
            vals = _integrands(D[i, j], D[j, k], D[i, k], H[i, j], H[j, k], H[i, k])
            wt = w[i] * w[j] * w[k]
            for acc, v in zip(parts, vals):
                acc.append(float((v * wt).sum()))
        sums = [math.fsum(p) for p in parts]
        return TripleSums(*sums, n_triples=count, mode="exact", **common)
    if mode != "mc":
        raise ValueError(f"unknown mode {mode!r}")
    if samples < 2:
        raise ValueError("Monte Carlo mode needs at least two samples")
    rng = np.random.default_rng(seed)
    W = math.fsum(w)
    i, j, k = (rng.choice(len(idx), size=samples, p=w / W) for _ in range(3))
    a, b, c = D[i, j], D[j, k], D[i, k]
    keep = in_sigma(a, b, c, alpha)
    vals = [np.zeros(samples) for _ in range(3)]
    kept = _integrands(a[keep], b[keep], c[keep], H[i, j][keep], H[j, k][keep], H[i, k][keep])
    for v, x in zip(vals, kept):
        v[keep] = x * W**3
    means = [float(v.mean()) for v in vals]
    ses = [float(v.std(ddof=1) / math.sqrt(samples)) for v in vals]
    return TripleSums(*means, n_triples=int(keep.sum()), mode="mc", seed=seed, samples=samples,
                      menger_se=ses[0], gamma_se=ses[1], nh_perm_se=ses[2], **common)


@dataclass
class ChainReport:
    n_triples: int
    max_c2_partial: float
    max_partial_gamma: float
    min_gamma_gap: float
    c2_violations: int
    partial_violations: int
    gamma_violations: int

    @property
    def violations(self) -> int:
        return self.c2_violations + self.partial_violations + self.gamma_violations

    def as_dict(self) -> dict:
        return dict(asdict(self), violations=self.violations)


def domination_chain(pset: WeightedPointSet, alpha: float, tau: float, c1: float, center=None,
                     R: float = np.inf, cap: int = EXACT_CAP) -> ChainReport:
    """Check, on every non-degenerate triple, ``c^2 <= tau diam^-3 defect <= tau c1 gamma1^4 / diam^2``
    together with the pointwise gamma domination."""
    idx = _ball_indices(pset, center, R)
    if len(idx) > cap:
        raise ValueError(f"{len(idx)} points exceed the exact-mode cap {cap}")
    D = pset.dist_matrix[np.ix_(idx, idx)]
    H = pset.nh_matrix[np.ix_(idx, idx)]
    count, v1, v2, v3 = 0, 0, 0, 0
    m1, m2, m3 = 0.0, 0.0, np.inf
    for i, mask in _blocks(D, alpha):
        j, k = np.nonzero(mask)
        if not len(j):
            continue
        count += len(j)
        a, b, c = D[i, j], D[j, k], D[i, k]
        ha, hb, hc = H[i, j], H[j, k], H[i, k]
        diam = np.maximum(np.maximum(a, b), c)
        r1 = c2_partial_ratio(a, b, c)
        g1, g2, _ = _sort3(_ratio(ha, a), _ratio(hb, b), _ratio(hc, c))
        r2 = _defect_gamma_ratio(defect_from_sides(a, b, c), g1, diam)
        gap = gamma_domination_gap(alpha, g1, g2, diam, ha, hb, hc)
        scale = np.maximum(g1**2 * g2**2 / diam**2, 1e-300)
        m1, m2, m3 = max(m1, float(r1.max())), max(m2, float(r2.max())), min(m3, float((gap / scale).min()))
        v1 += int(np.sum(r1 > tau))
        v2 += int(np.sum(r2 > c1))
        v3 += int(np.sum(gap < -1e-9 * scale))
    return ChainReport(count, m1, m2, m3 if count else 0.0, v1, v2, v3)


def format_functionals_csv(result: TripleSums) -> str:
    """One row per functional with the run metadata repeated on each row."""
    meta = [result.alpha, result.R, " ".join(repr(v) for v in result.center) if result.center else "",
            result.n_points, result.mode, "" if result.seed is None else result.seed]
    rows = [("menger_sum", result.menger_sum, result.menger_se),
            ("gamma_sum", result.gamma_sum, result.gamma_se),
            ("nh_perm_sum", result.nh_perm_sum, result.nh_perm_se)]
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["functional", "value", "std_error", "alpha", "R", "center", "n_points", "mode", "seed"])
    for name, val, se in rows:
        out.writerow([name, repr(val), repr(se), *meta])
    return buf.getvalue()


def write_functionals_csv(result: TripleSums, path) -> None:
    Path(path).write_text(format_functionals_csv(result))
