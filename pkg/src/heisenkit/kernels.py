"""The kernel family ``Omega^m / N`` and the sub-Laplacian gradient kernel."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .heis import HPoint, _koranyi, _mul, _nh, _all_hpoints, as_points

__all__ = [
    "KernelSpec",
    "K1",
    "K2",
    "eval_kernel",
    "eval_pair",
    "kernel_from_gauges",
    "eval_sublaplacian",
    "cz_smoothness_ratio",
    "sample_smoothness_triples",
    "kernel_matrix",
]


@dataclass(frozen=True)
class KernelSpec:
    """``K_m(p) = Omega(p)^m / N(p) = NH(p)^m / N(p)^(m+1)``."""

    m: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"kernel exponent must be a positive integer, got {self.m!r}")

    @classmethod
    def k1(cls) -> "KernelSpec":
        return cls(8)

    @classmethod
    def k2(cls) -> "KernelSpec":
        return cls(2)


K1 = KernelSpec.k1()
K2 = KernelSpec.k2()


def kernel_from_gauges(m: int, n: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Kernel values from precomputed ``N`` and ``NH`` arrays (``N > 0`` assumed)."""
    return (h / n) ** m / n


def eval_kernel(spec: KernelSpec, p):
    a = as_points(p)
    n = _koranyi(a)
    if np.any(n == 0):
        raise ValueError("kernel is singular at the origin")
    out = kernel_from_gauges(spec.m, n, _nh(a))
    return float(out) if isinstance(p, HPoint) else out


def eval_pair(spec: KernelSpec, p, q):
    """``k(p, q) = K_m(q^-1 . p)``, symmetric in ``p`` and ``q``."""
    a, b = as_points(p), as_points(q)
    u = _mul(-b, a)
    n = _koranyi(u)
    if np.any(n == 0):
        raise ValueError("kernel is singular on the diagonal p == q")
    out = kernel_from_gauges(spec.m, n, _nh(u))
    return float(out) if _all_hpoints(p, q) else out


def eval_sublaplacian(p):
    """Horizontal gradient of the fundamental solution of the sub-Laplacian.

    Each component is ``-3``-homogeneous: ``K(delta_r p) = r^-3 K(p)``.
    """
    a = as_points(p)
    x, y, z = a[..., 0], a[..., 1], a[..., 2]
    rho = x * x + y * y
    den = (rho * rho + z * z) ** 1.5
    if np.any(den == 0):
        raise ValueError("sub-Laplacian kernel is singular at the origin")
    kx = (x * rho + y * z) / den
    ky = (y * rho - x * z) / den
    if isinstance(p, HPoint):
        return float(kx), float(ky)
    return np.stack([kx, ky], axis=-1)


def cz_smoothness_ratio(spec: KernelSpec, p, p_prime, q):
    """Empirical smoothness constant ``|k(p,q) - k(p',q)| d(p,q)^2 / d(p,p')``.

    Admissible triples have ``d(p, p') <= d(p, q) / 2`` and ``p, p' != q``.
    Returns 0 where ``p' == p``.
    """
    a, a2, b = as_points(p), as_points(p_prime), as_points(q)
    d_pq = _koranyi(_mul(-b, a))
    d_pp = _koranyi(_mul(-a2, a))
    d_p2q = _koranyi(_mul(-b, a2))
    if np.any(d_pq == 0) or np.any(d_p2q == 0):
        raise ValueError("p and p' must differ from q")
    if np.any(d_pp > 0.5 * d_pq * (1 + 1e-12)):
        raise ValueError("smoothness ratio requires d(p, p') <= d(p, q) / 2")
    u, u2 = _mul(-b, a), _mul(-b, a2)
    k = kernel_from_gauges(spec.m, d_pq, _nh(u))
    k2 = kernel_from_gauges(spec.m, d_p2q, _nh(u2))
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(d_pp > 0, np.abs(k - k2) * d_pq**2 / np.where(d_pp > 0, d_pp, 1.0), 0.0)
    return float(out) if _all_hpoints(p, p_prime, q) else out


def sample_smoothness_triples(rng: np.random.Generator, n: int):
    """Random admissible ``(p, p', q)`` triples for the smoothness estimate.

    ``q`` and ``p`` are drawn in a box, and ``p' = p . delta_s(u)`` with ``u``
    on the unit Korányi sphere and ``s`` uniform in ``[0, d(p, q) / 2]``.
    Vertical scales are mixed log-uniformly so near-horizontal and
    near-vertical configurations are both represented.
    """
    q = rng.uniform(-1, 1, size=(n, 3))
    rel = rng.uniform(-1, 1, size=(n, 3))
    rel[:, 2] *= 10.0 ** rng.uniform(-6, 1, size=n)
    p = _mul(q, rel)
    d = _koranyi(rel)
    u = rng.normal(size=(n, 3))
    u[:, 2] *= 10.0 ** rng.uniform(-6, 1, size=n)
    nu = _koranyi(u)
    u[:, :2] /= nu[:, None]
    u[:, 2] /= nu * nu
    s = rng.uniform(0, 0.5, size=n) * d
    step = np.stack([s * u[:, 0], s * u[:, 1], s * s * u[:, 2]], axis=-1)
    return p, _mul(p, step), q


def kernel_matrix(pset, spec: KernelSpec) -> np.ndarray:
    """``K[i, j] = K_m(p_j^-1 p_i)`` over a point set, zero on the diagonal; cached."""
    key = ("kernel", spec.m)
    cache = pset.derived
    if key not in cache:
        D, H = pset.dist_matrix, pset.nh_matrix
        with np.errstate(invalid="ignore", divide="ignore"):
            K = np.where(D > 0, kernel_from_gauges(spec.m, np.where(D > 0, D, 1.0), H), 0.0)
        K.setflags(write=False)
        cache[key] = K
    return cache[key]
