"""
Steiner augmentation towards Gabriel triangulations, and generators of Gabriel-triangulated
lattice instances.

The augmenter has no size guarantee. A short refinement first inserts the circumcenter of the
worst Delaunay face, confined to a fixed box around the input. When that does not settle, a
disk around the input is filled with a graded point cloud, the cloud is relaxed with
repulsive bar forces, and the faces that are still not acute are repaired by moving Steiner
points and inserting circumcenters. Original points never move.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.spatial import Delaunay, QhullError, cKDTree

from chordgraph import logger
from chordgraph.config import Config
from chordgraph.errors import DegenerateInputError, FaceExtractionError, GeometryError
from chordgraph.gabriel import Triangulation, check_gabriel_triangulation, delaunay_graph, faces_of, gabriel_graph
from chordgraph.geometry import GeomGraph, PointSet, coordinate_scale

LATTICE_E1 = np.array([1.0, 0.0])
LATTICE_E2 = np.array([0.5, np.sqrt(3.0) / 2.0])
BARREL_STRENGTH = 0.08

# circumcenter refinement
FAR_CIRCUMCENTER_FACTOR = 10.0
HULL_PUSH_FACTOR = 0.6
NEW_POINT_SEPARATION = 1e3

# disk mesh: sizing
DISK_MARGIN = 1.5
BASE_SIZE = 0.4
MAX_BASE_SIZE = 0.6
SIZE_GRADIENT = 0.3
MAX_SIZE_GRADIENT = 0.8
MIN_RIM_POINTS = 12
RIM_SAMPLES = 1440
CLOUD_SHARE = 0.8
JITTER = 0.05

# disk mesh: relaxation
RELAX_ITERATIONS = 150
RELAX_STEP = 0.2
BAR_STRETCH = 1.2
RELAX_TOLERANCE = 1e-3

# disk mesh: repair
ACUTE_TARGET_DEG = 89.5
REPAIR_ROUNDS = 40
REPAIR_SWEEPS = 4
MESH_ATTEMPTS = 3

_TURNS = np.linspace(0.0, 2.0 * np.pi, 12, endpoint=False)
_NUDGES = np.vstack([r * np.column_stack([np.cos(_TURNS), np.sin(_TURNS)]) for r in (0.05, 0.15, 0.3)])


@dataclass(frozen=True)
class AugmentResult:
    original: PointSet
    augmented: PointSet
    triangulation: Optional[Triangulation]
    steiner_count: int
    succeeded: bool
    rounds: int = 0

    @property
    def graph(self) -> Optional[GeomGraph]:
        return None if self.triangulation is None else self.triangulation.graph


@dataclass(frozen=True)
class LatticeInstance:
    points: PointSet
    graph: GeomGraph
    seed: int
    retries: int


def triangulate(ps: PointSet) -> GeomGraph:
    """A crossing-free triangulation of ps (Delaunay, which maximizes the minimum angle)."""
    return delaunay_graph(ps)


def _corner_angles(corners: np.ndarray) -> np.ndarray:
    """Angles in degrees at the corners of triangles stacked as (..., 3, 2). Degenerate corners read 180."""
    angles = []
    for k in range(3):
        u = corners[..., (k + 1) % 3, :] - corners[..., k, :]
        v = corners[..., (k + 2) % 3, :] - corners[..., k, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            cosine = np.sum(u * v, axis=-1) / (np.linalg.norm(u, axis=-1) * np.linalg.norm(v, axis=-1))
        angles.append(np.degrees(np.arccos(np.clip(np.nan_to_num(cosine, nan=-1.0), -1.0, 1.0))))
    return np.stack(angles, axis=-1)


def _signed_areas(corners: np.ndarray) -> np.ndarray:
    ab = corners[..., 1, :] - corners[..., 0, :]
    ac = corners[..., 2, :] - corners[..., 0, :]
    return ab[..., 0] * ac[..., 1] - ab[..., 1] * ac[..., 0]


def _circumcenters(corners: np.ndarray) -> np.ndarray:
    a = corners[..., 0, :]
    b = corners[..., 1, :] - a
    c = corners[..., 2, :] - a
    d = 2.0 * (b[..., 0] * c[..., 1] - b[..., 1] * c[..., 0])
    b2, c2 = np.sum(b * b, axis=-1), np.sum(c * c, axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        offset = np.stack([(c[..., 1] * b2 - b[..., 1] * c2) / d, (b[..., 0] * c2 - c[..., 0] * b2) / d], axis=-1)
    return a + offset


def circumcenter(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> Optional[np.ndarray]:
    center = _circumcenters(np.array([a, b, c], dtype=float))
    return center if np.all(np.isfinite(center)) else None


def _unique_edges(simplices: np.ndarray) -> np.ndarray:
    edges = np.vstack([simplices[:, [0, 1]], simplices[:, [1, 2]], simplices[:, [0, 2]]])
    return np.unique(np.sort(edges, axis=1), axis=0)


def _non_acute_faces(xy: np.ndarray, simplices: np.ndarray, limit_deg: float) -> np.ndarray:
    """Indices of faces with an angle above limit_deg, worst first."""
    largest = _corner_angles(xy[simplices]).max(axis=1)
    bad = np.flatnonzero(largest > limit_deg)
    return bad[np.argsort(-largest[bad], kind="stable")]


def _stars(simplices: np.ndarray, count: int) -> List[np.ndarray]:
    owners = np.repeat(np.arange(len(simplices)), 3)
    flat = simplices.ravel()
    order = np.argsort(flat, kind="stable")
    bounds = np.searchsorted(flat[order], np.arange(count + 1))
    return [owners[order[bounds[v]:bounds[v + 1]]] for v in range(count)]


def _pushed_midpoint(p: np.ndarray, q: np.ndarray, away_from: np.ndarray) -> np.ndarray:
    """Midpoint of pq moved off the segment, away from away_from, by a fraction of |pq|."""
    mid = (p + q) / 2.0
    along = q - p
    normal = np.array([-along[1], along[0]]) / np.hypot(*along)
    if np.dot(normal, mid - away_from) < 0:
        normal = -normal
    return mid + normal * HULL_PUSH_FACTOR * np.hypot(*along)


def _settled(ps: PointSet) -> bool:
    return len(ps) >= 3 and check_gabriel_triangulation(gabriel_graph(ps, method="delaunay")).ok


class _Refiner:
    """Worst-face circumcenter insertion inside a box fixed by the original points."""

    def __init__(self, ps: PointSet):
        self.coords = [tuple(p) for p in ps.coords]
        self.center = ps.coords.mean(axis=0)
        self.reach = FAR_CIRCUMCENTER_FACTOR * ps.scale
        self.lower = ps.coords.min(axis=0) - self.reach
        self.upper = ps.coords.max(axis=0) + self.reach

    def _is_new(self, point: np.ndarray) -> bool:
        if not np.all(np.isfinite(point)) or np.any(point < self.lower) or np.any(point > self.upper):
            return False
        xy = np.array(self.coords)
        tolerance = Config.DUPLICATE_TOLERANCE * max(1.0, coordinate_scale(np.vstack([xy, point])))
        distance, _ = cKDTree(xy).query(point)
        return distance > NEW_POINT_SEPARATION * tolerance

    def _off_line_point(self, xy: np.ndarray) -> Optional[np.ndarray]:
        order = np.lexsort((xy[:, 1], xy[:, 0]))
        p, q = xy[order[0]], xy[order[-1]]
        if np.allclose(p, q):
            return None
        below = (p + q) / 2.0 + np.array([(q - p)[1], -(q - p)[0]])
        candidate = _pushed_midpoint(p, q, below)
        return candidate if self._is_new(candidate) else None

    def next_point(self) -> Optional[np.ndarray]:
        xy = np.array(self.coords)
        try:
            tri = Delaunay(xy)
        except (QhullError, ValueError):
            return self._off_line_point(xy)
        corners = xy[tri.simplices]
        # argmax keeps the lowest simplex index among equally bad faces
        face = int(np.argmax(_corner_angles(corners).max(axis=1)))

        center = circumcenter(*corners[face])
        if center is not None and self._is_new(center):
            inside = tri.find_simplex(center) >= 0
            if inside or np.hypot(*(center - self.center)) <= self.reach:
                return center

        lengths = np.hypot(*(np.roll(corners[face], -1, axis=0) - corners[face]).T)
        k = int(np.argmax(lengths))
        i, j = tri.simplices[face][k], tri.simplices[face][(k + 1) % 3]
        opposite = corners[face][(k + 2) % 3]
        hull_edges = {(min(u, v), max(u, v)) for u, v in tri.convex_hull}
        if (min(i, j), max(i, j)) in hull_edges:
            candidate = _pushed_midpoint(xy[i], xy[j], opposite)
        else:
            candidate = (xy[i] + xy[j]) / 2.0
        return candidate if self._is_new(candidate) else None


def _refine(ps: PointSet, limit: int) -> Tuple[PointSet, int, bool]:
    refiner = _Refiner(ps)
    current = ps
    rounds = 0
    while not _settled(current):
        if rounds >= limit:
            return current, rounds, False
        point = refiner.next_point()
        if point is None:
            logger.debug(f"Circumcenter refinement stalled after {rounds} rounds")
            return current, rounds, False
        try:
            current = PointSet(np.vstack([current.coords, point]))
        except DegenerateInputError as e:
            logger.debug(f"Circumcenter refinement stopped at a coincident candidate: {e}")
            return current, rounds, False
        refiner.coords.append(tuple(point))
        rounds += 1
    return current, rounds, True


class _DiskMesher:
    """
    Graded mesh of a disk around the input. The input points are fixed vertices; Steiner
    points fill the disk and its rim, so the hull of the result is the rim polygon.

    Target edge length grows linearly away from each input point, starting from a fraction
    of its clearance (distance to its nearest neighbour or to the rim).
    """

    def __init__(self, ps: PointSet, gradient: float, base: float, seed: int):
        self.fixed = ps.coords
        self.n = len(ps)
        self.center = self.fixed.mean(axis=0)
        spread = np.hypot(*(self.fixed - self.center).T)
        self.radius = DISK_MARGIN * float(spread.max()) if spread.max() > 0 else 1.0
        clearance = self.radius - spread
        if self.n > 1:
            nearest, _ = cKDTree(self.fixed).query(self.fixed, k=2)
            clearance = np.minimum(clearance, nearest[:, 1])
        self.cap = 2.0 * np.pi * self.radius / MIN_RIM_POINTS
        self.base = np.minimum(base * clearance, self.cap)
        self.gradient = gradient
        self.rng = np.random.default_rng(seed)

    def size(self, points: np.ndarray) -> np.ndarray:
        distance = np.linalg.norm(points[:, None, :] - self.fixed[None, :, :], axis=2)
        return np.minimum(self.cap, np.min(self.base[None, :] + self.gradient * distance, axis=1))

    def on_rim(self, theta) -> np.ndarray:
        theta = np.atleast_1d(theta)
        return self.center + self.radius * np.column_stack([np.cos(theta), np.sin(theta)])

    def rim(self) -> np.ndarray:
        """Rim points spaced by the sizing function."""
        theta = np.linspace(0.0, 2.0 * np.pi, RIM_SAMPLES + 1)
        density = self.radius / self.size(self.on_rim(theta[:-1]))
        cumulative = np.concatenate([[0.0], np.cumsum(density)]) * (2.0 * np.pi / RIM_SAMPLES)
        count = max(MIN_RIM_POINTS, int(np.ceil(cumulative[-1])))
        targets = (np.arange(count) + 0.5) * cumulative[-1] / count
        return self.on_rim(np.interp(targets, cumulative, theta))

    def _lattice_keys(self, spacing: float, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
        row = spacing * np.sqrt(3.0) / 2.0
        b = np.arange(np.floor((lower[1] - self.center[1]) / row), np.ceil((upper[1] - self.center[1]) / row) + 1)
        a = np.arange(np.floor((lower[0] - self.center[0]) / spacing) - 1,
                      np.ceil((upper[0] - self.center[0]) / spacing) + 1)
        aa, bb = np.meshgrid(a, b)
        return np.column_stack([aa.ravel(), bb.ravel()]).astype(np.int64)

    def _lattice_points(self, spacing: float, keys: np.ndarray) -> np.ndarray:
        x = self.center[0] + (keys[:, 0] + 0.5 * (keys[:, 1] % 2)) * spacing
        y = self.center[1] + keys[:, 1] * spacing * np.sqrt(3.0) / 2.0
        return np.column_stack([x, y])

    def interior(self) -> np.ndarray:
        """
        Staggered-grid points, one grid per octave of the sizing function. Finer grids are only
        enumerated around the input points, where the sizing function is small.
        """
        finest = float(self.base.min())
        levels = int(np.ceil(np.log2(self.cap / finest))) + 1 if finest < self.cap else 0
        chunks = []
        for k in range(levels + 1):
            spacing = self.cap / 2.0 ** k
            lower = spacing / np.sqrt(2.0) if k < levels else 0.0
            upper = spacing * np.sqrt(2.0)
            if k == 0:
                boxes = [(self.center - self.radius, self.center + self.radius)]
            else:
                reach = (upper - self.base) / self.gradient
                boxes = [(p - r, p + r) for p, r in zip(self.fixed, reach) if r > 0]
            if not boxes:
                continue
            keys = np.unique(np.vstack([self._lattice_keys(spacing, lo, hi) for lo, hi in boxes]), axis=0)
            points = self._lattice_points(spacing, keys)
            h = self.size(points)
            inside = np.hypot(*(points - self.center).T) < self.radius - 0.5 * h
            chunks.append(points[inside & (h >= lower) & (h < upper)])
        cloud = np.vstack(chunks) if chunks else np.empty((0, 2))
        if not len(cloud):
            return cloud
        distance, _ = cKDTree(self.fixed).query(cloud)
        cloud = cloud[distance > 0.5 * self.size(cloud)]
        return cloud + self.rng.uniform(-JITTER, JITTER, size=cloud.shape) * self.size(cloud)[:, None]

    def _project(self, xy: np.ndarray) -> None:
        offset = xy - self.center
        distance = np.hypot(*offset.T)
        outside = distance > self.radius
        xy[outside] = self.center + offset[outside] * (self.radius / distance[outside])[:, None]

    def relax(self, xy: np.ndarray) -> np.ndarray:
        """Bar-force relaxation: short bars push apart, points leaving the disk go back to the rim."""
        xy = xy.copy()
        free = np.arange(len(xy)) >= self.n
        for iteration in range(RELAX_ITERATIONS):
            bars = _unique_edges(Delaunay(xy).simplices)
            vectors = xy[bars[:, 0]] - xy[bars[:, 1]]
            lengths = np.hypot(*vectors.T)
            wanted = self.size((xy[bars[:, 0]] + xy[bars[:, 1]]) / 2.0)
            target = wanted * BAR_STRETCH * np.sqrt(np.sum(lengths ** 2) / np.sum(wanted ** 2))
            force = (np.maximum(target - lengths, 0.0) / lengths)[:, None] * vectors
            total = np.zeros_like(xy)
            np.add.at(total, bars[:, 0], force)
            np.add.at(total, bars[:, 1], -force)
            total[~free] = 0.0
            step = RELAX_STEP * total
            xy += step
            self._project(xy)
            if np.max(np.hypot(*step[free].T) / self.size(xy[free])) < RELAX_TOLERANCE:
                logger.debug(f"Relaxation converged after {iteration + 1} iterations")
                break
        return xy

    def _best_position(self, xy: np.ndarray, v: int, faces: np.ndarray, ring: np.ndarray) -> Optional[np.ndarray]:
        """Position of v minimizing the largest angle of its star, if it beats the current one."""
        corners = xy[faces]
        mine = faces == v
        signs = np.sign(_signed_areas(corners))
        current = float(_corner_angles(corners).max())

        areas = np.abs(_signed_areas(corners))
        centers = _circumcenters(corners)
        with np.errstate(divide="ignore", invalid="ignore"):
            weighted = np.sum(areas[:, None] * centers, axis=0) / np.sum(areas)
        neighbours = xy[ring]
        spread = float(np.mean(np.hypot(*(neighbours - xy[v]).T)))
        candidates = [neighbours.mean(axis=0), xy[v] + spread * _NUDGES]
        if np.all(np.isfinite(weighted)):
            candidates.append(weighted)
        candidates = np.vstack(candidates)

        trial = np.broadcast_to(corners, (len(candidates),) + corners.shape).copy()
        trial[:, mine] = candidates[:, None, :]
        trial_areas = _signed_areas(trial)
        valid = np.all((np.sign(trial_areas) == signs) & (trial_areas != 0), axis=1)
        valid &= np.hypot(*(candidates - self.center).T) < self.radius
        worst = np.where(valid, _corner_angles(trial).max(axis=(1, 2)), np.inf)
        best = int(np.argmin(worst))
        return candidates[best] if worst[best] < current - 1e-9 else None

    def _smooth(self, xy: np.ndarray, tri: Delaunay, bad: np.ndarray) -> np.ndarray:
        indptr, indices = tri.vertex_neighbor_vertices
        on_hull = np.zeros(len(xy), dtype=bool)
        on_hull[np.unique(tri.convex_hull)] = True
        movable = (np.arange(len(xy)) >= self.n) & ~on_hull

        order: List[int] = []
        seen = set()
        touched = [int(v) for v in tri.simplices[bad].ravel()]
        for v in touched + [int(u) for t in touched for u in indices[indptr[t]:indptr[t + 1]]]:
            if movable[v] and v not in seen:
                seen.add(v)
                order.append(v)

        stars = _stars(tri.simplices, len(xy))
        xy = xy.copy()
        for _ in range(REPAIR_SWEEPS):
            moved = False
            for v in order:
                target = self._best_position(xy, v, tri.simplices[stars[v]], indices[indptr[v]:indptr[v + 1]])
                if target is not None:
                    xy[v] = target
                    moved = True
            if not moved:
                break
        return xy

    def _insertions(self, xy: np.ndarray, tri: Delaunay, bad: np.ndarray, limit: int) -> np.ndarray:
        """
        Circumcenters of the bad faces. A circumcenter outside the mesh, or inside the diametral
        disk of a rim chord, is replaced by the rim point above that chord.
        """
        tree = cKDTree(xy)
        ends = xy[tri.convex_hull]
        mids = ends.mean(axis=1)
        halves = np.hypot(*(ends[:, 1] - ends[:, 0]).T) / 2.0
        chosen: List[np.ndarray] = []
        for face in bad:
            corners = xy[tri.simplices[face]]
            shortest = float(np.hypot(*(np.roll(corners, -1, axis=0) - corners).T).min())
            center = _circumcenters(corners)
            if not np.all(np.isfinite(center)):
                continue
            gaps = np.hypot(*(mids - center).T)
            encroached = np.flatnonzero(gaps < halves)
            if len(encroached) or tri.find_simplex(center) < 0:
                chord = int(encroached[np.argmin(gaps[encroached])]) if len(encroached) else int(np.argmin(gaps))
                outward = mids[chord] - self.center
                options = [(self.on_rim(np.arctan2(outward[1], outward[0]))[0], 0.5 * halves[chord])]
            else:
                options = [(center, 0.5 * shortest), (corners.mean(axis=0), 0.3 * shortest)]
            for point, clearance in options:
                if tree.query(point)[0] <= clearance:
                    continue
                if chosen and np.min(np.hypot(*(np.array(chosen) - point).T)) <= clearance:
                    continue
                chosen.append(point)
                break
            if len(chosen) >= limit:
                break
        return np.array(chosen).reshape(-1, 2)

    def repair(self, xy: np.ndarray, budget: int) -> Tuple[np.ndarray, int]:
        """Smooth, then insert, until every face is acute or the budget runs out."""
        inserted = 0
        for round_ in range(REPAIR_ROUNDS):
            tri = Delaunay(xy)
            bad = _non_acute_faces(xy, tri.simplices, ACUTE_TARGET_DEG)
            if not len(bad):
                return xy, round_
            xy = self._smooth(xy, tri, bad)
            tri = Delaunay(xy)
            bad = _non_acute_faces(xy, tri.simplices, ACUTE_TARGET_DEG)
            if not len(bad):
                return xy, round_ + 1
            if inserted >= budget:
                break
            points = self._insertions(xy, tri, bad, budget - inserted)
            if not len(points):
                break
            xy = np.vstack([xy, points])
            inserted += len(points)
            logger.debug(f"Repair round {round_}: {len(bad)} faces not acute, {len(points)} points inserted")
        return xy, REPAIR_ROUNDS


def _fit_mesher(ps: PointSet, budget: int, seed: int) -> Optional[Tuple[_DiskMesher, np.ndarray]]:
    """Coarsen the sizing until the starting cloud leaves room for repair insertions."""
    gradient, base = SIZE_GRADIENT, BASE_SIZE
    while True:
        mesher = _DiskMesher(ps, gradient, base, seed)
        start = np.vstack([ps.coords, mesher.rim(), mesher.interior()])
        if len(start) - len(ps) <= CLOUD_SHARE * budget:
            return mesher, start
        if gradient < MAX_SIZE_GRADIENT:
            gradient = min(MAX_SIZE_GRADIENT, gradient * 1.25)
        elif base < MAX_BASE_SIZE:
            base = min(MAX_BASE_SIZE, base * 1.25)
        else:
            logger.info(f"No graded disk mesh around {len(ps)} points fits {budget} Steiner points")
            return None


def _mesh(ps: PointSet, budget: int, seed: int) -> Optional[Tuple[PointSet, int]]:
    outcome = None
    for attempt in range(MESH_ATTEMPTS):
        fitted = _fit_mesher(ps, budget, seed + attempt)
        if fitted is None:
            break
        mesher, start = fitted
        try:
            xy, rounds = mesher.repair(mesher.relax(start), budget - (len(start) - len(ps)))
            augmented = PointSet(xy)
        except (DegenerateInputError, QhullError) as e:
            logger.info(f"Disk mesh attempt {attempt} failed: {e}")
            continue
        outcome = (augmented, rounds)
        if _settled(augmented):
            break
        logger.info(f"Disk mesh attempt {attempt} left faces that are not acute")
    return outcome


def augment_heuristic(ps: PointSet, max_rounds: Optional[int] = None, seed: int = 0) -> AugmentResult:
    """
    Add at most max_rounds Steiner points so that the Gabriel graph of the augmented set is a
    Gabriel triangulation. Original points are never moved or removed, and keep their indices.
    The seed only drives the jitter of the disk mesh; failure is reported, never raised.
    """
    n = len(ps)
    if max_rounds is None:
        max_rounds = Config.STEINER_ROUNDS_PER_POINT * n
    if max_rounds < 0:
        raise ValueError(f"max_rounds must be non-negative, got {max_rounds}")

    current, rounds, settled = _refine(ps, min(max_rounds, n + 3)) if n else (ps, 0, False)
    if not settled and n and max_rounds > 0:
        meshed = _mesh(ps, max_rounds, seed)
        if meshed is not None:
            current, mesh_rounds = meshed
            rounds += mesh_rounds

    final = gabriel_graph(current, method="delaunay")
    check = check_gabriel_triangulation(final)
    if check.ok:
        triangulation = faces_of(final)
    else:
        try:
            triangulation = faces_of(triangulate(current))
        except FaceExtractionError:
            triangulation = None
    steiner_count = len(current) - n
    logger.info(f"Steiner augmentation of {n} points: {steiner_count} added, "
                f"{'succeeded' if check.ok else 'failed: ' + str(check.reason)}")
    return AugmentResult(original=ps, augmented=current, triangulation=triangulation,
                         steiner_count=steiner_count, succeeded=check.ok, rounds=rounds)


def lattice_generator(rows: int, cols: int, jitter: float = 0.0, seed: int = 0) -> PointSet:
    """
    Parallelogram patch of the unit triangular lattice. Patches with a side of three or more
    points are bowed outward so the boundary is strictly convex; jitter (in units of the
    lattice spacing) moves interior points only.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"rows and cols must be positive, got {rows} x {cols}")
    if not 0.0 <= jitter < 0.2:
        raise ValueError(f"jitter must lie in [0, 0.2), got {jitter}")
    j, i = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    i, j = i.ravel(), j.ravel()
    coords = i[:, None] * LATTICE_E1 + j[:, None] * LATTICE_E2

    if max(rows, cols) >= 3:
        center = coords.mean(axis=0)
        offset = coords - center
        r2 = np.einsum("ij,ij->i", offset, offset)
        coords = center + offset * (1.0 - BARREL_STRENGTH * r2 / r2.max())[:, None]

    interior = (i > 0) & (i < cols - 1) & (j > 0) & (j < rows - 1)
    if jitter > 0 and interior.any():
        rng = np.random.default_rng(seed)
        coords[interior] += rng.uniform(-jitter, jitter, size=(int(interior.sum()), 2))
    return PointSet(coords)


def gabriel_lattice(rows: int, cols: int, jitter: float = 0.05, seed: int = 0,
                    max_retries: Optional[int] = None) -> LatticeInstance:
    """First seed-derived lattice whose Gabriel graph is a Gabriel triangulation."""
    limit = Config.GENERATOR_MAX_RETRIES if max_retries is None else max_retries
    for retry in range(limit + 1):
        derived = seed + retry * 1_000_003
        ps = lattice_generator(rows, cols, jitter, derived)
        g = gabriel_graph(ps, method="delaunay")
        if check_gabriel_triangulation(g).ok:
            if retry:
                logger.info(f"Gabriel lattice {rows}x{cols} needed {retry} retries")
            return LatticeInstance(points=ps, graph=g, seed=derived, retries=retry)
    raise GeometryError(f"no Gabriel-triangulated {rows}x{cols} lattice within {limit} retries")
