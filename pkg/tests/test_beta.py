import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisenkit.beta import (
    TWO_POINT_CONSTANT,
    beta_ball,
    beta_cube,
    beta_points,
    beta_table,
    format_beta_csv,
    tsp_sum,
)
from heisenkit.cubes import build_cubes
from heisenkit.heis import HorizontalLine, HPoint, dist, dist_to_line, line_sample, mul, nh, inv
from heisenkit.measure import horizontal_segment_set

# 200^3 grid over (theta, offset, height in [-0.05, 0.05]) from scripts/oracles.py;
# every grid line is admissible, so this bounds the infimum from above
THREE_POINT_GRID = 0.0712047469378119
THREE_POINTS = [(0, 0, 0), (1, 0, 0), (0, 0, 0.01)]


def witness_sup(res, pts):
    d, _ = dist_to_line(np.asarray(pts, dtype=float), res.witness)
    return float(np.max(d)) / res.radius


class TestBetaPoints:
    def test_points_on_a_line(self):
        L = HorizontalLine(HPoint(0.3, -0.2, 1.0), 0.7)
        pts = line_sample(L, np.linspace(-1, 1, 9))
        res = beta_points(pts, 1.0)
        # distances take a fourth root of rounding-level z gaps, so 1e-7 is the floor
        assert res.value == pytest.approx(0.0, abs=1e-7)
        assert witness_sup(res, pts) == pytest.approx(0.0, abs=1e-7)

    def test_three_point_matches_grid(self):
        res = beta_points(THREE_POINTS, 1.0)
        assert res.value <= THREE_POINT_GRID + 1e-9
        assert abs(res.value - THREE_POINT_GRID) <= 5e-3

    def test_value_is_witness_sup_and_above_lower_bound(self, rng):
        pts = rng.uniform(-1, 1, size=(30, 3))
        res = beta_points(pts, 2.0)
        assert res.value == pytest.approx(witness_sup(res, pts), rel=1e-9)
        assert 0 <= res.lower_bound <= res.value
        assert res.gap >= 0

    def test_errors(self):
        with pytest.raises(ValueError):
            beta_points(np.zeros((0, 3)), 1.0)
        with pytest.raises(ValueError):
            beta_points(THREE_POINTS, 0.0)

    @settings(max_examples=25)
    @given(st.lists(st.tuples(*[st.floats(-1, 1)] * 3), min_size=2, max_size=12, unique=True))
    def test_two_point_bound_on_witness(self, pts):
        pts = np.array(pts)
        res = beta_points(pts, 1.0)
        d, _ = dist_to_line(pts, res.witness)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                a, b = HPoint(*pts[i]), HPoint(*pts[j])
                dab = dist(a, b)
                if dab == 0:
                    continue
                bound = TWO_POINT_CONSTANT * nh(mul(inv(a), b)) ** 2 / dab
                assert max(d[i], d[j]) >= bound - 1e-9

    def test_translation_and_dilation_invariant(self, rng):
        pts = rng.uniform(-1, 1, size=(20, 3))
        base = beta_points(pts, 1.5)
        g = np.array([0.4, -1.2, 2.0])
        moved = mul(np.broadcast_to(g, pts.shape), pts)
        assert beta_points(moved, 1.5).value == pytest.approx(base.value, rel=1e-9)
        for s in (2.0, 3.0):
            big = np.column_stack([s * pts[:, :2], s * s * pts[:, 2]])
            assert beta_points(big, s * 1.5).value == pytest.approx(base.value, rel=1e-9)


class TestBetaBall:
    def test_segment_is_flat(self, segment512):
        for i in (0, 100, 300):
            assert beta_ball(segment512, segment512.points[i], 0.2).value == 0.0

    def test_empty_ball(self, segment512):
        with pytest.raises(ValueError):
            beta_ball(segment512, HPoint(0, 0, 50), 0.1)

    def test_circle_ball(self, circle256):
        res = beta_ball(circle256, circle256.points[10], 0.5)
        idx = circle256.ball(circle256.points[10], 0.5)
        assert res.n_points == len(idx)
        assert 0 < res.value < 1
        assert res.value == pytest.approx(witness_sup(res, circle256.points[idx]), rel=1e-9)


class TestCubes:
    def test_segment_cubes_vanish(self, segment512, segment512_tree):
        assert all(beta_cube(segment512, segment512_tree, q) == 0.0 for q in segment512_tree.cubes[:40])
        res = tsp_sum(segment512, segment512_tree, 0)
        assert res.total == 0.0 and res.mu_s == pytest.approx(1.0)

    def test_dilation_covariance(self, circle256, circle256_tree):
        # dilation by 2 is exact in floating point and shifts every level by one
        big = circle256.dilated(2.0)
        tree2 = build_cubes(big)
        assert tree2.j_min == circle256_tree.j_min - 1
        for q, q2 in list(zip(circle256_tree.cubes, tree2.cubes))[:30]:
            assert np.array_equal(q.members, q2.members)
            assert beta_cube(big, tree2, q2) == pytest.approx(beta_cube(circle256, circle256_tree, q), rel=1e-9, abs=1e-12)

    def test_circle_betas_peak_then_decrease(self, circle512, circle512_tree):
        table = beta_table(circle512, circle512_tree, 0)
        by_level = {}
        for row in table:
            by_level.setdefault(row["level"], []).append(row["beta"])
        levels = sorted(by_level)
        means = [float(np.mean(by_level[j])) for j in levels]
        # coarse cubes see more of the circle as they shrink toward its radius,
        # finer ones see flatter arcs
        k = int(np.argmax(means))
        assert 0 < k < len(means) - 2
        tail = means[k:]
        assert all(b < a for a, b in zip(tail, tail[1:]))
        assert tail[-1] < 0.5 * tail[0]

    def test_exponent_monotone(self, circle256, circle256_tree):
        table = beta_table(circle256, circle256_tree, 0)
        assert all(r["beta"] <= 1 for r in table)
        t4 = tsp_sum(circle256, circle256_tree, 0, exponent=4, table=table)
        t2 = tsp_sum(circle256, circle256_tree, 0, exponent=2, table=table)
        assert t4.total <= t2.total
        assert t4.ratio == pytest.approx(t4.total / t4.mu_s)

    def test_csv(self, circle256, circle256_tree):
        res = tsp_sum(circle256, circle256_tree, 0)
        rows = list(csv.reader(io.StringIO(format_beta_csv(res))))
        assert rows[0] == ["cube_id", "level", "beta", "mu", "term"]
        assert len(rows) == len(res.rows) + 2
        assert rows[-1][0] == "total"
        assert float(rows[-1][-1]) == pytest.approx(res.total)
        assert math.fsum(float(r[4]) for r in rows[1:-1]) == pytest.approx(res.total, rel=1e-12)
