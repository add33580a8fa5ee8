"""Dyadic (David) cubes on a finite weighted point set.

Construction, top-down over a finite level window ``[j_min, j_max]``:

* the top level is the whole set (``2^-j_min >= diam``);
* a level-``j`` cube is the piece of a level ``j - 1`` cube obtained by
  repeatedly cutting its minimum spanning tree, at a golden-ratio point of
  the longest tree path, until each piece has diameter at most ``2^-j``.
  Nesting is automatic and a cube never depends on finer levels.  On
  sampled curves the tree follows the curve, so cubes are arcs whose shape
  converges as the sampling is refined;
* ``p_Q`` (``center_index``) is the member farthest from the rest of the
  set, i.e. the point that realises the largest ball ``B(p_Q, r) n E``
  contained in ``Q``.

The verifier :func:`verify_cube_axioms` does not trust the builder: it
rederives partitions from the member lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .measure import WeightedPointSet

__all__ = [
    "Cube",
    "CubeTree",
    "CubeReport",
    "default_levels",
    "build_cubes",
    "verify_cube_axioms",
    "dilated_cube",
    "format_tree",
    "parse_tree",
]

D2_SLACK = 2.0
SPLIT_FRACTION = (3 - math.sqrt(5)) / 2


@dataclass
class Cube:
    id: int
    level: int
    center_index: int
    members: np.ndarray
    parent: int | None = None
    children: list[int] = field(default_factory=list)
    net_index: int | None = None


@dataclass
class CubeTree:
    j_min: int
    j_max: int
    cubes: list[Cube]
    c_report: float = math.nan

    def __post_init__(self):
        self._by_level: dict[int, list[int]] = {}
        for q in self.cubes:
            self._by_level.setdefault(q.level, []).append(q.id)

    @property
    def levels(self) -> range:
        return range(self.j_min, self.j_max + 1)

    def at_level(self, j: int) -> list[Cube]:
        return [self.cubes[i] for i in self._by_level.get(j, [])]

    def labels(self, j: int, n: int) -> np.ndarray:
        """Cube id of every point at level ``j`` (-1 where unassigned)."""
        lab = np.full(n, -1, dtype=int)
        for q in self.at_level(j):
            lab[q.members] = q.id
        return lab

    def descendants(self, s: Cube | int) -> list[Cube]:
        """``Delta(S)``: all cubes of the tree contained in ``S``, ``S`` included."""
        root = self.cubes[s] if isinstance(s, int) else s
        out, stack = [], [root.id]
        while stack:
            q = self.cubes[stack.pop()]
            out.append(q)
            stack.extend(reversed(q.children))
        return sorted(out, key=lambda q: (q.level, q.id))

    def roots(self) -> list[Cube]:
        return self.at_level(self.j_min)

    def parent_at(self, q: Cube, level: int) -> Cube:
        """The ancestor of ``q`` at a coarser ``level`` (``q`` itself if equal)."""
        if level > q.level or level < self.j_min:
            raise ValueError(f"level {level} outside [{self.j_min}, {q.level}]")
        while q.level > level:
            q = self.cubes[q.parent]
        return q


def default_levels(pset: WeightedPointSet) -> tuple[int, int]:
    """``j_min`` with ``2^-j_min >= diam`` and the finest ``j_max`` with ``2^-j_max >= 2 spacing``."""
    j_min = math.floor(-math.log2(pset.diameter))
    j_max = math.floor(-math.log2(2 * pset.max_spacing))
    return j_min, max(j_min, j_max)


def _tree_depths(sub: np.ndarray, root: int) -> np.ndarray:
    """Path length from ``root`` along the minimum spanning tree of a distance matrix (Prim)."""
    m = len(sub)
    depth = np.zeros(m)
    link = sub[root].copy()
    via = np.full(m, root)
    free = np.ones(m, dtype=bool)
    free[root] = False
    for _ in range(m - 1):
        k = int(np.argmin(np.where(free, link, np.inf)))
        free[k] = False
        depth[k] = depth[via[k]] + sub[k, via[k]]
        closer = free & (sub[k] < link)
        link[closer] = sub[k, closer]
        via[closer] = k
    return depth


def _bisect(D: np.ndarray, members: np.ndarray, anchor: int, target: float,
            resolution: float = 0.0) -> list[tuple[int, np.ndarray]]:
    """Split ``members`` in two until every piece has ``diameter + resolution <= target``.

    Each split cuts the piece's minimum spanning tree at path length
    ``SPLIT_FRACTION * L`` from one end of its longest path (length ``L``).
    Halving would keep ``diam * 2^j`` unchanged from one level to the next,
    so a cube born near the split threshold would leave its whole subtree
    near it; the uneven golden cut spreads that ratio out.  Returns
    ``(anchor, members)`` pieces ordered by their smallest member; an unsplit
    piece keeps the incoming anchor.

    A sampled piece falls about one sample gap short of the arc it stands
    for, so ``resolution`` (the sample spacing) is added before comparing.
    Without it a piece whose arc just exceeds ``target`` passes at coarse
    sampling and splits at fine sampling.
    """
    done, todo = [], [(anchor, members)]
    while todo:
        anc, m = todo.pop()
        sub = D[np.ix_(m, m)]
        if len(m) == 1 or sub.max() + resolution <= target:
            done.append((anc, m))
            continue
        # cut along the minimum spanning tree so pieces of a sampled curve stay
        # arcs; a, b are the ends of the tree's longest path (double sweep)
        depth = _tree_depths(sub, int(np.argmax(_tree_depths(sub, 0))))
        ia = int(np.argmin(depth))
        ib = int(np.argmax(depth))
        near_a = depth < SPLIT_FRACTION * depth[ib]
        keep_a = anc in m[near_a]
        todo.append((anc if keep_a else int(m[ia]), m[near_a]))
        todo.append((int(m[ib]) if keep_a else anc, m[~near_a]))
    return sorted(done, key=lambda piece: int(piece[1][0]))


def build_cubes(pset: WeightedPointSet, j_min: int | None = None, j_max: int | None = None) -> CubeTree:
    """Nested cube partitions of ``pset`` for levels ``j_min..j_max``."""
    dj_min, dj_max = default_levels(pset)
    j_min = dj_min if j_min is None else int(j_min)
    j_max = dj_max if j_max is None else int(j_max)
    if j_max < j_min:
        raise ValueError(f"empty level window [{j_min}, {j_max}]")
    if 2.0 ** -j_max < 2 * pset.max_spacing * (1 - 1e-12):
        raise ValueError(
            f"level {j_max} is below the sampling resolution: need 2^-j_max >= 2 * {pset.max_spacing:.6g}"
        )
    D = pset.dist_matrix
    n = len(pset)
    cubes: list[Cube] = []

    def emit(pieces, j: int, parent: int | None) -> list[int]:
        ids = []
        for anc, m in pieces:
            q = Cube(len(cubes), j, anc, m, parent, net_index=anc)
            cubes.append(q)
            if parent is not None:
                cubes[parent].children.append(q.id)
            ids.append(q.id)
        return ids

    gap = pset.max_spacing
    level_ids = emit(_bisect(D, np.arange(n), 0, 2.0**-j_min), j_min, None)
    for j in range(j_min + 1, j_max + 1):
        nxt = []
        for qid in level_ids:
            q = cubes[qid]
            nxt.extend(emit(_bisect(D, q.members, q.net_index, 2.0**-j, gap), j, q.id))
        level_ids = nxt

    _place_centers(D, cubes, n)
    tree = CubeTree(j_min, j_max, cubes)
    tree.c_report = _d3_constant(D, tree, n)
    return tree


def _outside_distance(D: np.ndarray, lab: np.ndarray) -> np.ndarray:
    """For each point, distance to the nearest point carrying a different label."""
    return np.where(lab[:, None] != lab[None, :], D, np.inf).min(axis=1)


def _place_centers(D: np.ndarray, cubes: list[Cube], n: int) -> None:
    for j in sorted({q.level for q in cubes}):
        level = [q for q in cubes if q.level == j]
        lab = np.full(n, -1, dtype=int)
        for q in level:
            lab[q.members] = q.id
        depth = _outside_distance(D, lab)
        for q in level:
            q.center_index = int(q.members[np.argmax(depth[q.members])])


def _d3_constant(D: np.ndarray, tree: CubeTree, n: int) -> float:
    best = math.inf
    for j in tree.levels:
        depth = _outside_distance(D, tree.labels(j, n))
        for q in tree.at_level(j):
            best = min(best, float(depth[q.center_index]) * 2.0**j)
    return best


@dataclass
class CubeReport:
    d1_violations: list[str]
    d2_slack: float
    d3_constant: float
    mass_band: tuple[float, float]
    n_cubes: int

    @property
    def ok(self) -> bool:
        return not self.d1_violations and self.d2_slack <= D2_SLACK * (1 + 1e-12) and self.d3_constant > 0

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "d1_violations": list(self.d1_violations),
            "d2_slack": self.d2_slack,
            "d3_constant": self.d3_constant,
            "mass_band": list(self.mass_band),
            "n_cubes": self.n_cubes,
        }


def verify_cube_axioms(tree: CubeTree, pset: WeightedPointSet) -> CubeReport:
    """Check (D1) nesting, measure the (D2) slack and the (D3) constant."""
    n = len(pset)
    D = pset.dist_matrix
    bad: list[str] = []
    labels = {}
    for j in tree.levels:
        count = np.zeros(n, dtype=int)
        lab = np.full(n, -1, dtype=int)
        for q in tree.at_level(j):
            if len(q.members) == 0:
                bad.append(f"cube {q.id} at level {j} is empty")
                continue
            count[q.members] += 1
            lab[q.members] = q.id
        if np.any(count != 1):
            bad.append(f"level {j} is not a partition: {int(np.sum(count == 0))} uncovered, "
                       f"{int(np.sum(count > 1))} multiply covered")
        labels[j] = lab
    for q in tree.cubes:
        for k in range(tree.j_min, q.level):
            owners = np.unique(labels[k][q.members])
            if len(owners) != 1:
                bad.append(f"cube {q.id} (level {q.level}) meets {len(owners)} cubes of level {k}")
        if q.parent is not None:
            p = tree.cubes[q.parent]
            if not np.all(np.isin(q.members, p.members)):
                bad.append(f"cube {q.id} not contained in its parent {p.id}")
        if q.children:
            kids = np.concatenate([tree.cubes[c].members for c in q.children])
            if len(kids) != len(q.members) or not np.array_equal(np.sort(kids), np.sort(q.members)):
                bad.append(f"children of cube {q.id} do not partition it")

    slack, d3 = 0.0, math.inf
    mass_lo, mass_hi = math.inf, 0.0
    for j in tree.levels:
        depth = _outside_distance(D, labels[j])
        for q in tree.at_level(j):
            if len(q.members) == 0:
                continue
            m = q.members
            slack = max(slack, float(D[np.ix_(m, m)].max()) * 2.0**j)
            if q.center_index not in set(m.tolist()):
                bad.append(f"centre of cube {q.id} is not a member")
            d3 = min(d3, float(depth[q.center_index]) * 2.0**j)
            mu = pset.mass(m) * 2.0**j
            mass_lo, mass_hi = min(mass_lo, mu), max(mass_hi, mu)
    return CubeReport(bad, slack, d3, (mass_lo, mass_hi), len(tree.cubes))


def cube_diameter(pset: WeightedPointSet, q: Cube) -> float:
    m = q.members
    return float(pset.dist_matrix[np.ix_(m, m)].max())


def dilated_cube(tree: CubeTree, q: Cube | int, lam: float, pset: WeightedPointSet,
                 resolution: float = 0.0) -> np.ndarray:
    """``lam Q = {x in E : d(x, Q) <= (lam - 1) (diam Q + resolution)}`` as sorted indices.

    ``resolution = 0`` is the plain definition.  A cube of a sample stops one
    sample gap short of the piece of the underlying set it stands for, so its
    measured diameter is low by about the sample spacing; passing that
    spacing as ``resolution`` removes the bias.
    """
    if lam < 1:
        raise ValueError("dilation factor must be >= 1")
    if resolution < 0:
        raise ValueError("resolution must be >= 0")
    q = tree.cubes[q] if isinstance(q, int) else q
    if lam == 1:
        return np.array(q.members, dtype=int)
    reach = (lam - 1) * (cube_diameter(pset, q) + resolution)
    d_to_q = pset.dist_matrix[:, q.members].min(axis=1)
    return np.flatnonzero(d_to_q <= reach)


def format_tree(tree: CubeTree) -> str:
    lines = []
    for q in tree.cubes:
        parent = "-" if q.parent is None else str(q.parent)
        members = " ".join(str(int(i)) for i in q.members)
        lines.append(f"cube {q.id} {q.level} {parent} {q.center_index} : {members}")
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> CubeTree:
    cubes: list[Cube] = []
    for ln in text.splitlines():
        if not ln.strip() or ln.lstrip().startswith("#"):
            continue
        head, _, tail = ln.partition(":")
        tok = head.split()
        if len(tok) != 5 or tok[0] != "cube":
            raise ValueError(f"bad cube line: {ln!r}")
        cid, level, center = int(tok[1]), int(tok[2]), int(tok[4])
        parent = None if tok[3] == "-" else int(tok[3])
        if cid != len(cubes):
            raise ValueError(f"cube ids must be consecutive from 0; got {cid}")
        cubes.append(Cube(cid, level, center, np.array([int(t) for t in tail.split()], dtype=int), parent))
    for q in cubes:
        if q.parent is not None:
            cubes[q.parent].children.append(q.id)
    levels = [q.level for q in cubes]
    return CubeTree(min(levels), max(levels), cubes)
