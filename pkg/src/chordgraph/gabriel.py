"""
Gabriel graphs, planar face extraction, and the Gabriel-triangulation test.

A pair (p, q) is a Gabriel edge when the closed disk with diameter pq holds no third
point. A third point r lies in that disk exactly when (p - r)·(q - r) <= 0.
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import Delaunay, QhullError, cKDTree

from chordgraph import logger
from chordgraph.config import Config
from chordgraph.errors import (
    CrossingEdgesError,
    DisconnectedGraphError,
    FaceExtractionError,
    GeometryError,
    NonTriangularFaceError,
)
from chordgraph.geometry import Edge, GeomGraph, PointSet, convex_hull, find_crossing
from chordgraph.models import GabrielCheck

Face = Tuple[int, int, int]

METHODS = ("brute", "delaunay")


@dataclass(frozen=True)
class Triangulation:
    graph: GeomGraph
    internal_faces: Tuple[Face, ...]
    outer_face: Tuple[int, ...]

    @property
    def face_count(self) -> int:
        return len(self.internal_faces)


def _gabriel_tolerance(ps: PointSet) -> float:
    return Config.GABRIEL_TOLERANCE * ps.scale ** 2


def _brute_force_edges(ps: PointSet) -> Set[Edge]:
    xy = ps.coords - ps.coords.mean(axis=0) if len(ps) else ps.coords
    n = len(xy)
    tol = _gabriel_tolerance(ps)
    self_dots = np.einsum("ij,ij->i", xy, xy)
    edges = set()
    for i in range(n - 1):
        to_i = xy[i] - xy                                   # row k: p_i - p_k
        # dots[j, k] = (p_i - p_k)·(p_j - p_k)
        dots = xy @ to_i.T - (xy[i] @ xy.T - self_dots)[None, :]
        dots[:, i] = np.inf
        np.fill_diagonal(dots, np.inf)
        blocked = np.any(dots <= tol, axis=1)
        for j in range(i + 1, n):
            if not blocked[j]:
                edges.add((i, j))
    return edges


def _delaunay_edges(xy: np.ndarray) -> Set[Edge]:
    triangulation = Delaunay(xy)
    edges = set()
    for a, b, c in triangulation.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            edges.add((int(min(u, v)), int(max(u, v))))
    return edges


def delaunay_graph(ps: PointSet) -> GeomGraph:
    """Edges of the Delaunay triangulation; collinear sets give the path in sorted order."""
    n = len(ps)
    if n < 2:
        return GeomGraph(ps)
    try:
        return GeomGraph(ps, frozenset(_delaunay_edges(ps.coords)))
    except (QhullError, ValueError):
        order = np.lexsort((ps.coords[:, 1], ps.coords[:, 0])).tolist()
        return GeomGraph.from_edges(ps, zip(order, order[1:]))


def _filtered_edges(ps: PointSet) -> Set[Edge]:
    xy = ps.coords
    tree = cKDTree(xy)
    tol = _gabriel_tolerance(ps)
    slack = Config.DUPLICATE_TOLERANCE * ps.scale
    edges = set()
    for i, j in delaunay_graph(ps).edges:
        center = (xy[i] + xy[j]) / 2.0
        radius = float(np.hypot(*(xy[i] - xy[j]))) / 2.0
        nearby = [k for k in tree.query_ball_point(center, radius + slack) if k != i and k != j]
        if not nearby:
            edges.add((i, j))
            continue
        dots = np.einsum("ij,ij->i", xy[i] - xy[nearby], xy[j] - xy[nearby])
        if np.all(dots > tol):
            edges.add((i, j))
    return edges


def gabriel_graph(ps: PointSet, method: str = "brute") -> GeomGraph:
    """
    Gabriel graph of ps. 'brute' is the O(n^3) reference; 'delaunay' filters Delaunay edges
    with disk queries and must agree with it.
    """
    if method not in METHODS:
        raise ValueError(f"unknown Gabriel method {method!r}; expected one of {METHODS}")
    if method == "delaunay" and len(ps) >= 3:
        edges = _filtered_edges(ps)
    else:
        edges = _brute_force_edges(ps)
    logger.debug(f"Gabriel graph ({method}) of {len(ps)} points has {len(edges)} edges")
    return GeomGraph(ps, frozenset(edges))


def _signed_area(xy: np.ndarray, cycle: List[int]) -> float:
    pts = xy[cycle]
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _canonical_cycle(cycle: List[int]) -> Tuple[int, ...]:
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


def _is_connected(g: GeomGraph) -> bool:
    if g.n <= 1:
        return True
    edges = g.edge_array
    matrix = coo_matrix((np.ones(len(edges)), (edges[:, 0], edges[:, 1])), shape=(g.n, g.n))
    count, _ = connected_components(matrix, directed=False)
    return count == 1


def faces_of(g: GeomGraph) -> Triangulation:
    """
    Walk the faces of a connected crossing-free graph using the counterclockwise order of
    edges around each vertex. The dart after (u, v) is (v, w) with w the neighbour of v
    just clockwise of u, so bounded faces come out counterclockwise and the outer face
    is the only one with negative area.
    """
    if g.n < 3:
        raise FaceExtractionError(f"a triangulation needs at least three points, got {g.n}")
    crossing = find_crossing(g)
    if crossing is not None:
        raise CrossingEdgesError(f"edges {crossing[0]} and {crossing[1]} cross")
    if not _is_connected(g):
        raise DisconnectedGraphError("graph is not connected")

    xy = g.points.coords
    rotation: Dict[int, List[int]] = {}
    position: Dict[int, Dict[int, int]] = {}
    for v, neighbours in enumerate(g.adjacency):
        delta = xy[list(neighbours)] - xy[v]
        order = np.argsort(np.arctan2(delta[:, 1], delta[:, 0]), kind="stable")
        ring = [neighbours[k] for k in order]
        rotation[v] = ring
        position[v] = {w: k for k, w in enumerate(ring)}

    unvisited = {(u, v) for u, v in g.edges} | {(v, u) for u, v in g.edges}
    internal: List[Face] = []
    outer: List[List[int]] = []
    while unvisited:
        start = min(unvisited)
        cycle: List[int] = []
        dart = start
        while True:
            unvisited.discard(dart)
            u, v = dart
            cycle.append(u)
            ring = rotation[v]
            w = ring[(position[v][u] - 1) % len(ring)]
            dart = (v, w)
            if dart == start:
                break
        if _signed_area(xy, cycle) < 0:
            outer.append(cycle)
        elif len(cycle) != 3 or len(set(cycle)) != 3:
            raise NonTriangularFaceError(f"face {cycle} is not a triangle")
        else:
            internal.append(_canonical_cycle(cycle))

    if len(outer) != 1:
        raise FaceExtractionError(f"expected one outer face, found {len(outer)}")
    hull_cycle = list(reversed(outer[0]))
    return Triangulation(graph=g, internal_faces=tuple(sorted(internal)), outer_face=_canonical_cycle(hull_cycle))


def face_angles(xy: np.ndarray, face: Face) -> List[float]:
    angles = []
    for k in range(3):
        a, b, c = xy[face[k - 1]], xy[face[k]], xy[face[(k + 1) % 3]]
        u, v = a - b, c - b
        cosine = float(np.dot(u, v) / (np.hypot(*u) * np.hypot(*v)))
        angles.append(math.degrees(math.acos(max(-1.0, min(1.0, cosine)))))
    return angles


def check_gabriel_triangulation(g: GeomGraph) -> GabrielCheck:
    """Structural and angular test, with the reason when it fails."""
    if g.n < 3:
        return GabrielCheck(ok=False, reason=f"a triangulation needs at least three points, got {g.n}")
    try:
        triangulation = faces_of(g)
    except FaceExtractionError as e:
        return GabrielCheck(ok=False, reason=str(e))

    hull = _canonical_cycle(convex_hull(g.points))
    if triangulation.outer_face != hull:
        return GabrielCheck(ok=False, reason="outer face is not the strictly convex hull",
                            face_count=triangulation.face_count)

    xy = g.points.coords
    angles = [a for face in triangulation.internal_faces for a in face_angles(xy, face)]
    smallest, largest = min(angles), max(angles)
    if largest >= 90.0 - Config.ANGLE_TOLERANCE_DEG:
        return GabrielCheck(ok=False, reason=f"internal face angle {largest:.6f} deg is not acute",
                            face_count=triangulation.face_count, min_angle_deg=smallest, max_angle_deg=largest)
    return GabrielCheck(ok=True, face_count=triangulation.face_count, min_angle_deg=smallest, max_angle_deg=largest)


def is_gabriel_triangulation(g: GeomGraph) -> bool:
    return check_gabriel_triangulation(g).ok


def necessity_check(ps: PointSet, g: GeomGraph) -> List[Edge]:
    """Gabriel edges of ps missing from g; empty when the necessary condition holds."""
    if g.points != ps:
        raise GeometryError("graph does not span exactly the given point set")
    return sorted(gabriel_graph(ps).edges - g.edges)
