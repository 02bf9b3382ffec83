"""
Planar geometry kernel: points, directions, orientation, hulls, rotations and crossings.

Coordinates are double precision. Every tolerance is relative to the scale of the
instance (the diagonal of its bounding box), so inputs of any size behave alike.
"""
import math
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from chordgraph.config import Config
from chordgraph.errors import DegenerateInputError, GeometryError, NotConvexError

Edge = Tuple[int, int]


class Point(NamedTuple):
    x: float
    y: float


class Orientation(IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


def normalize_deg(angle: float) -> float:
    """Map an angle to [0, 360)."""
    r = float(angle) % 360.0
    return 0.0 if r >= 360.0 else r


def angle_diff(a, b):
    """Signed difference a - b folded into [-180, 180). Works elementwise on arrays."""
    return (np.asarray(a, dtype=float) - b + 180.0) % 360.0 - 180.0


def coordinate_scale(xy: np.ndarray) -> float:
    if len(xy) < 2:
        return 1.0
    extent = float(np.hypot(*(xy.max(axis=0) - xy.min(axis=0))))
    return extent if extent > 0 else 1.0


@dataclass(frozen=True)
class Direction:
    """A directed straight line through the origin, given by its angle in degrees."""

    angle_deg: float

    def __post_init__(self):
        if not math.isfinite(self.angle_deg):
            raise GeometryError(f"direction angle must be finite, got {self.angle_deg}")
        object.__setattr__(self, "angle_deg", normalize_deg(self.angle_deg))

    @property
    def vector(self) -> np.ndarray:
        rad = math.radians(self.angle_deg)
        return np.array([math.cos(rad), math.sin(rad)])

    @property
    def normal(self) -> "Direction":
        return Direction(self.angle_deg + 90.0)

    def rotated(self, delta_deg: float) -> "Direction":
        """Counterclockwise rotation; negative deltas rotate clockwise."""
        return Direction(self.angle_deg + delta_deg)

    def opposite(self) -> "Direction":
        return Direction(self.angle_deg + 180.0)

    def clockwise_offset(self, other: "Direction") -> float:
        """Clockwise rotation in [0, 360) that brings self onto other."""
        return normalize_deg(self.angle_deg - other.angle_deg)


def _first_duplicate(xy: np.ndarray) -> Optional[Edge]:
    if len(xy) < 2:
        return None
    tol = Config.DUPLICATE_TOLERANCE * max(1.0, coordinate_scale(xy))
    pairs = cKDTree(xy).query_pairs(r=tol)
    if not pairs:
        return None
    return min((min(p), max(p)) for p in pairs)


@dataclass(frozen=True, eq=False)
class PointSet:
    """An ordered set of distinct planar points; ids are list positions."""

    coords: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coords, dtype=float)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise GeometryError(f"expected an (n, 2) coordinate array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise GeometryError("coordinates must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)
        pair = _first_duplicate(arr)
        if pair is not None:
            raise DegenerateInputError(f"points {pair[0]} and {pair[1]} coincide", pair)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[float]]) -> "PointSet":
        return cls(np.array([tuple(p) for p in points], dtype=float).reshape(-1, 2))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Point]:
        for x, y in self.coords:
            yield Point(float(x), float(y))

    def __getitem__(self, index: int) -> Point:
        x, y = self.coords[index]
        return Point(float(x), float(y))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.coords.shape == other.coords.shape and bool(np.array_equal(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash(self.coords.tobytes())

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)})"

    @property
    def points(self) -> List[Point]:
        return list(self)

    @cached_property
    def scale(self) -> float:
        return coordinate_scale(self.coords)

    def subset(self, indices: Sequence[int]) -> "PointSet":
        return PointSet(self.coords[list(indices)])


@dataclass(frozen=True, eq=False)
class GeomGraph:
    """A point set and a set of straight-line edges (i, j) with i < j."""

    points: PointSet
    edges: FrozenSet[Edge] = frozenset()

    def __post_init__(self):
        n = len(self.points)
        normalized = set()
        for e in self.edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise GeometryError(f"self-loop at vertex {i}")
            if i > j:
                raise GeometryError(f"edge ({i}, {j}) must be written as ({j}, {i})")
            if i < 0 or j >= n:
                raise GeometryError(f"edge ({i}, {j}) is out of range for {n} points")
            normalized.add((i, j))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, points: PointSet, pairs: Iterable[Sequence[int]]) -> "GeomGraph":
        """Build a graph from unordered pairs, normalizing each to (min, max)."""
        return cls(points, frozenset((min(int(a), int(b)), max(int(a), int(b))) for a, b in pairs))

    @classmethod
    def complete(cls, points: PointSet) -> "GeomGraph":
        n = len(points)
        return cls(points, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeomGraph):
            return NotImplemented
        return self.points == other.points and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.points, self.edges))

    def __repr__(self) -> str:
        return f"GeomGraph(n={self.n}, edges={self.edge_count})"

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    @cached_property
    def edge_array(self) -> np.ndarray:
        return np.array(self.sorted_edges(), dtype=np.int64).reshape(-1, 2)

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """Neighbours of every vertex in ascending index order."""
        neighbours: List[List[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            neighbours[i].append(j)
            neighbours[j].append(i)
        return tuple(tuple(sorted(nb)) for nb in neighbours)

    def union(self, other: "GeomGraph") -> "GeomGraph":
        if other.points != self.points:
            raise GeometryError("cannot merge graphs over different point sets")
        return GeomGraph(self.points, self.edges | other.edges)

    def with_edges(self, pairs: Iterable[Sequence[int]]) -> "GeomGraph":
        return GeomGraph.from_edges(self.points, list(self.edges) + [tuple(p) for p in pairs])


def orientation(p: Sequence[float], q: Sequence[float], r: Sequence[float]) -> Orientation:
    """Turn direction of p -> q -> r from the doubled signed area of the triangle."""
    area2 = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    scale = max((q[0] - p[0]) ** 2 + (q[1] - p[1]) ** 2,
                (r[0] - p[0]) ** 2 + (r[1] - p[1]) ** 2,
                (r[0] - q[0]) ** 2 + (r[1] - q[1]) ** 2)
    if scale == 0 or abs(area2) <= Config.ORIENTATION_TOLERANCE * scale:
        return Orientation.COLLINEAR
    return Orientation.COUNTERCLOCKWISE if area2 > 0 else Orientation.CLOCKWISE


def slope_deg(p: Sequence[float], q: Sequence[float]) -> float:
    """Directional slope of the segment p -> q, counterclockwise from the positive x-axis."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    if dx == 0 and dy == 0:
        raise DegenerateInputError(f"slope of a degenerate segment at ({p[0]}, {p[1]})")
    return normalize_deg(math.degrees(math.atan2(dy, dx)))


def _cross(o, a, b):
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (a[..., 1] - o[..., 1]) * (b[..., 0] - o[..., 0])


def hull_indices(xy: np.ndarray) -> List[int]:
    """Monotone-chain hull of raw coordinates, counterclockwise, collinear points dropped."""
    n = len(xy)
    if n == 0:
        return []
    if n == 1:
        return [0]
    tol = Config.ORIENTATION_TOLERANCE * coordinate_scale(xy) ** 2
    order = np.lexsort((xy[:, 1], xy[:, 0])).tolist()

    def chain(sequence):
        kept: List[int] = []
        for i in sequence:
            while len(kept) >= 2 and _cross(xy[kept[-2]], xy[kept[-1]], xy[i]) <= tol:
                kept.pop()
            kept.append(i)
        return kept

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def convex_hull(ps: PointSet) -> List[int]:
    if len(ps) == 0:
        raise GeometryError("convex hull of an empty point set")
    return hull_indices(ps.coords)


def is_convex_position(ps: PointSet) -> bool:
    if len(ps) == 0:
        raise GeometryError("convex position of an empty point set")
    if len(ps) <= 2:
        return True
    return len(convex_hull(ps)) == len(ps)


def first_projection_tie(xy: np.ndarray, d: Direction) -> Optional[Edge]:
    """The first pair of points whose projections on d coincide, if any."""
    if len(xy) < 2:
        return None
    proj = xy @ d.vector
    order = np.argsort(proj, kind="stable")
    gaps = np.diff(proj[order])
    ties = np.flatnonzero(gaps <= Config.DUPLICATE_TOLERANCE * coordinate_scale(xy))
    if len(ties) == 0:
        return None
    a, b = int(order[ties[0]]), int(order[ties[0] + 1])
    return min(a, b), max(a, b)


def check_generic(ps: PointSet, d: Direction) -> None:
    """Raise when d is orthogonal to the line through two points of ps."""
    pair = first_projection_tie(ps.coords, d)
    if pair is not None:
        raise DegenerateInputError(
            f"direction {d.angle_deg:.9g} deg is orthogonal to the line through points {pair[0]} and {pair[1]}",
            pair,
        )


def is_generic(ps: PointSet, d: Direction) -> bool:
    return first_projection_tie(ps.coords, d) is None


def is_one_sided(ps: PointSet, d: Direction) -> bool:
    """Whether the extreme points of ps along d are consecutive on its hull."""
    if not is_convex_position(ps):
        raise NotConvexError("one-sidedness is defined for point sets in convex position")
    check_generic(ps, d)
    n = len(ps)
    if n <= 3:
        return True
    hull = convex_hull(ps)
    position = {v: k for k, v in enumerate(hull)}
    proj = ps.coords @ d.vector
    lo, hi = int(np.argmin(proj)), int(np.argmax(proj))
    return (position[lo] - position[hi]) % n in (1, n - 1)


def rotate(ps: PointSet, phi_deg: float) -> PointSet:
    """Rigid counterclockwise rotation about the origin."""
    rad = math.radians(phi_deg)
    c, s = math.cos(rad), math.sin(rad)
    return PointSet(ps.coords @ np.array([[c, s], [-s, c]]))


def perturb(ps: PointSet, seed: int, magnitude: Optional[float] = None) -> PointSet:
    """Seeded uniform perturbation of every coordinate by at most magnitude * scale."""
    rng = np.random.default_rng(seed)
    amount = (Config.PERTURBATION_SCALE if magnitude is None else magnitude) * ps.scale
    return PointSet(ps.coords + rng.uniform(-amount, amount, size=ps.coords.shape))


def _in_box(p, q, r, slack):
    lo = np.minimum(p, q) - slack
    hi = np.maximum(p, q) + slack
    return np.all((r >= lo) & (r <= hi), axis=-1)


def _signs(values, tol):
    s = np.sign(values)
    s[np.abs(values) <= tol] = 0
    return s


def find_crossing(g: GeomGraph) -> Optional[Tuple[Edge, Edge]]:
    """The first pair of edges that meet anywhere other than a shared endpoint."""
    edges = g.edge_array
    xy = g.points.coords
    scale = g.points.scale
    tol = Config.ORIENTATION_TOLERANCE * scale ** 2
    slack = Config.DUPLICATE_TOLERANCE * scale
    for k in range(len(edges) - 1):
        i, j = edges[k]
        rest = edges[k + 1:]
        a, b = xy[i], xy[j]
        c, d = xy[rest[:, 0]], xy[rest[:, 1]]
        c_shared = (rest[:, 0] == i) | (rest[:, 0] == j)
        d_shared = (rest[:, 1] == i) | (rest[:, 1] == j)
        a_shared = (rest[:, 0] == i) | (rest[:, 1] == i)
        b_shared = (rest[:, 0] == j) | (rest[:, 1] == j)
        o1 = _signs(_cross(a, b, c), tol)
        o2 = _signs(_cross(a, b, d), tol)
        o3 = _signs(_cross(c, d, a), tol)
        o4 = _signs(_cross(c, d, b), tol)
        hit = (o1 * o2 < 0) & (o3 * o4 < 0)
        hit |= (o1 == 0) & _in_box(a, b, c, slack) & ~c_shared
        hit |= (o2 == 0) & _in_box(a, b, d, slack) & ~d_shared
        hit |= (o3 == 0) & _in_box(c, d, a, slack) & ~a_shared
        hit |= (o4 == 0) & _in_box(c, d, b, slack) & ~b_shared
        found = np.flatnonzero(hit)
        if len(found):
            other = rest[found[0]]
            return (int(i), int(j)), (int(other[0]), int(other[1]))
    return None


def crossing_free(g: GeomGraph) -> bool:
    return find_crossing(g) is None
