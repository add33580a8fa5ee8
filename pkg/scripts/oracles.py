"""Independent reference values for the unit tests.

Nothing here calls heisenkit: each value comes from a brute-force or
closed-form computation written from scratch, and the printed numbers are
copied into the tests as frozen constants.

    python3 scripts/oracles.py
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def koranyi(x, y, z):
    return ((x * x + y * y) ** 2 + z * z) ** 0.25


def group(p, q):
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2] + 0.5 * (p[0] * q[1] - p[1] * q[0]))


def d_h(p, q):
    u = group((-q[0], -q[1], -q[2]), p)
    return koranyi(*u)


def line_dist_oracle(w, theta=0.0, base=(0.0, 0.0, 0.0)):
    """Dense grid over r followed by golden-section refinement of the bracketing cell."""
    c, s = math.cos(theta), math.sin(theta)

    def f(r):
        return d_h(w, group(base, (r * c, r * s, 0.0)))

    grid = np.linspace(-10, 10, 1_000_001)
    u = group((-base[0], -base[1], -base[2]), w)
    vals = koranyi(u[0] - grid * c, u[1] - grid * s, u[2] + 0.5 * grid * (s * u[0] - c * u[1]))
    k = int(np.argmin(vals))
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    g = (math.sqrt(5) - 1) / 2
    for _ in range(200):
        x1, x2 = b - g * (b - a), a + g * (b - a)
        if f(x1) <= f(x2):
            b = x2
        else:
            a = x1
    r = 0.5 * (a + b)
    return f(r), r


def beta_grid_oracle(points, r=1.0, m=200, span=0.05):
    """min over a (theta, planar offset, vertical offset) grid of max d(z, L) / r.

    Offsets and heights range over ``[-span, span]``: the distance depends on
    a height error through its square root, so the height step must be fine.
    The line parameter covers ``[-3, 3]``.
    """
    pts = np.asarray(points, dtype=float)
    best = np.inf
    thetas = np.linspace(0, np.pi, m, endpoint=False)
    offs = np.linspace(-span, span, m)
    heights = np.linspace(-span, span, m)
    rr = np.linspace(-3, 3, 1201)
    for th in thetas:
        c, s = math.cos(th), math.sin(th)
        n = (-s, c)
        for o in offs:
            bx, by = o * n[0], o * n[1]
            # line points base . (t c, t s, 0), base = (bx, by, h): vectorised over h and t
            lx = bx + rr * c
            ly = by + rr * s
            lz_lin = 0.5 * rr * (bx * s - by * c)
            worst = np.zeros(m)
            for p in pts:
                # u = L(t)^-1 p
                ux = p[0] - lx
                uy = p[1] - ly
                uz = p[2] - (heights[:, None] + lz_lin[None, :]) - 0.5 * (lx * p[1] - ly * p[0])[None, :]
                dd = (((ux * ux + uy * uy) ** 2)[None, :] + uz * uz) ** 0.25
                worst = np.maximum(worst, dd.min(axis=1))
            best = min(best, float(worst.min()))
    return best / r


def shoelace(xy):
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]))


def circle_samples(n, radius=1.0):
    t = 2 * np.pi * np.arange(n + 1) / n
    return np.column_stack([radius * np.cos(t), radius * np.sin(t)])


def defect_bruteforce(p1, p2, p3):
    pts = (p1, p2, p3)
    return min(d_h(pts[a], pts[b]) + d_h(pts[b], pts[c]) - d_h(pts[a], pts[c])
               for a, b, c in itertools.permutations(range(3)))


def circumradius(a, b, c):
    s = 0.5 * (a + b + c)
    area = math.sqrt(s * (s - a) * (s - b) * (s - c))
    return a * b * c / (4 * area)


def sigma_count_bruteforce(points, alpha):
    n = len(points)
    D = [[d_h(points[i], points[j]) for j in range(n)] for i in range(n)]
    count = 0
    for i, j, k in itertools.permutations(range(n), 3):
        a, b, c = D[i][j], D[j][k], D[i][k]
        if min(a, b, c) >= alpha * max(a, b, c):
            count += 1
    return count


def main() -> None:
    d, r = line_dist_oracle((1.0, 1.0, 0.0))
    print(f"dist_to_line w=(1,1,0) x-axis: dist={d!r} r={r!r}")
    print(f"beta 3-point grid (200^3): {beta_grid_oracle([(0, 0, 0), (1, 0, 0), (0, 0, 0.01)])!r}")
    for n in (64, 256, 1024):
        xy = circle_samples(n)
        print(f"circle n={n}: shoelace={shoelace(xy)!r} pi-gap={math.pi - shoelace(xy):.3e} "
              f"arclength={float(np.sum(np.hypot(*np.diff(xy, axis=0).T)))!r}")
    v = defect_bruteforce((0, 0, 0), (0, 0, 1), (0, 0, 16))
    print(f"vertical triple defect (6 permutations): {v!r}")
    print(f"(3,4,5) menger curvature: {1 / circumradius(3, 4, 5)!r}")
    rng = np.random.default_rng(100)
    pts = [tuple(p) for p in rng.uniform(-1, 1, size=(100, 3))]
    print(f"sigma count N=100 seed=100 alpha=0.5: {sigma_count_bruteforce(pts, 0.5)}")


if __name__ == "__main__":
    main()
