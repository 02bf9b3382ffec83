"""
Path oracles: self-approaching, increasing-chord, θ-path membership, θ inference,
detour, greedy progress, and an exhaustive search used as an independent reference.
"""
from typing import List, Optional, Sequence, Union

import numpy as np

from chordgraph import logger
from chordgraph.config import Config
from chordgraph.errors import DegenerateInputError, PathNotInGraphError, SearchLimitError
from chordgraph.geometry import GeomGraph, PointSet, angle_diff, coordinate_scale, normalize_deg
from chordgraph.models import AngularInterval, PathWitness, VerifyReport

PathLike = Union[PointSet, np.ndarray, Sequence[Sequence[float]]]

MODES = ("tolerant", "strict")


def _path_array(path: PathLike) -> np.ndarray:
    coords = path.coords if isinstance(path, PointSet) else np.asarray(path, dtype=float)
    coords = coords.reshape(-1, 2)
    if len(coords) < 2:
        raise DegenerateInputError("a path needs at least two points")
    lengths = np.hypot(*np.diff(coords, axis=0).T)
    short = np.flatnonzero(lengths <= Config.DUPLICATE_TOLERANCE * coordinate_scale(coords))
    if len(short):
        k = int(short[0])
        raise DegenerateInputError(f"path points {k} and {k + 1} coincide", (k, k + 1))
    return coords


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def path_points(g: GeomGraph, vertices: Sequence[int]) -> np.ndarray:
    return g.points.coords[list(vertices)]


def edge_slopes(path: PathLike) -> np.ndarray:
    coords = _path_array(path)
    delta = np.diff(coords, axis=0)
    return np.degrees(np.arctan2(delta[:, 1], delta[:, 0])) % 360.0


def approach_margins(path: PathLike) -> np.ndarray:
    """
    For every edge i and every vertex j >= i + 2, the projection of p_j - p_{i+1} on the
    unit direction of edge i. The path is self-approaching iff none of these is negative;
    the projection from p_i exceeds it by the edge length and needs no separate test.
    """
    coords = _path_array(path)
    k = len(coords)
    delta = np.diff(coords, axis=0)
    units = delta / np.hypot(delta[:, 0], delta[:, 1])[:, None]
    proj = coords @ units.T
    base = proj[np.arange(1, k), np.arange(k - 1)]
    gaps = proj.T - base[:, None]
    mask = np.triu(np.ones((k - 1, k), dtype=bool), k=2)
    return gaps[mask]


def is_self_approaching(path: PathLike, mode: str = "tolerant") -> bool:
    _check_mode(mode)
    coords = _path_array(path)
    margins = approach_margins(coords)
    if len(margins) == 0:
        return True
    eps = Config.SELF_APPROACH_EPSILON * coordinate_scale(coords)
    if mode == "strict":
        return bool(np.all(margins > eps))
    return bool(np.all(margins >= -eps))


def is_increasing_chord(path: PathLike, mode: str = "tolerant") -> bool:
    coords = _path_array(path)
    return is_self_approaching(coords, mode) and is_self_approaching(coords[::-1], mode)


def is_theta_path(path: PathLike, theta_deg: float) -> bool:
    slopes = edge_slopes(path)
    return bool(np.all(np.abs(angle_diff(slopes, theta_deg)) <= 45.0 + Config.ANGLE_TOLERANCE_DEG))


def infer_theta(path: PathLike) -> Optional[AngularInterval]:
    """Every θ certifying the path as a θ-path, as one closed arc, or None."""
    tol = Config.ANGLE_TOLERANCE_DEG
    slopes = edge_slopes(path)
    start, width = normalize_deg(slopes[0] - 45.0), 90.0
    for s in slopes[1:]:
        other = normalize_deg(s - 45.0)
        offset = (other - start) % 360.0
        if offset <= width + tol:
            start, width = other, max(0.0, min(width - offset, 90.0))
        elif 360.0 - offset <= 90.0 + tol:
            width = max(0.0, min(90.0 - (360.0 - offset), width))
        else:
            return None
    return AngularInterval(start_deg=start, width_deg=width)


def detour(path: PathLike) -> float:
    coords = _path_array(path)
    direct = float(np.hypot(*(coords[-1] - coords[0])))
    if direct <= Config.DUPLICATE_TOLERANCE * coordinate_scale(coords):
        raise DegenerateInputError("detour is undefined for a path with coincident endpoints")
    length = float(np.sum(np.hypot(*np.diff(coords, axis=0).T)))
    return max(1.0, length / direct)


def is_greedy(path: PathLike, mode: str = "tolerant") -> bool:
    """Whether every vertex is closer to the destination than the one before it."""
    _check_mode(mode)
    coords = _path_array(path)
    distances = np.hypot(*(coords - coords[-1]).T)
    steps = np.diff(distances)
    eps = Config.SELF_APPROACH_EPSILON * coordinate_scale(coords)
    return bool(np.all(steps < -eps)) if mode == "strict" else bool(np.all(steps <= eps))


def _sample_positions(lengths: np.ndarray, samples: int, ladder_depth: int, rng) -> np.ndarray:
    cumulative = np.concatenate([[0.0], np.cumsum(lengths)])
    total = cumulative[-1]
    fractions = 10.0 ** -np.arange(1, ladder_depth + 1)
    near = [cumulative]
    for e, length in enumerate(lengths):
        near.append(cumulative[e] + length * fractions)
        near.append(cumulative[e] + length * (1.0 - fractions))
    near.append(rng.uniform(0.0, total, size=samples))
    return np.unique(np.clip(np.concatenate(near), 0.0, total))


def sampled_self_approaching(path: PathLike, samples: int = 200, seed: int = 0,
                             ladder_depth: int = 6) -> bool:
    """
    Check the three-point definition directly on arc-length samples: for every sample c,
    the distance from earlier samples to c never increases along the path.
    """
    coords = _path_array(path)
    lengths = np.hypot(*np.diff(coords, axis=0).T)
    positions = _sample_positions(lengths, samples, ladder_depth, np.random.default_rng(seed))
    cumulative = np.concatenate([[0.0], np.cumsum(lengths)])
    edge = np.clip(np.searchsorted(cumulative, positions, side="right") - 1, 0, len(lengths) - 1)
    t = ((positions - cumulative[edge]) / lengths[edge])[:, None]
    pts = coords[edge] * (1.0 - t) + coords[edge + 1] * t

    distances = np.hypot(pts[:, None, 0] - pts[None, :, 0], pts[:, None, 1] - pts[None, :, 1])
    rises = distances[1:, :] - distances[:-1, :]
    mask = np.triu(np.ones_like(rises, dtype=bool), k=1)
    eps = Config.SELF_APPROACH_EPSILON * coordinate_scale(coords)
    return bool(np.all(rises[mask] <= eps))


def _check_vertices(g: GeomGraph, vertices: Sequence[int]) -> List[int]:
    vertices = [int(v) for v in vertices]
    if len(vertices) < 2:
        raise DegenerateInputError("a path needs at least two vertices")
    for v in vertices:
        if not 0 <= v < g.n:
            raise PathNotInGraphError(f"vertex {v} is out of range for {g.n} points")
    seen = set()
    for k, v in enumerate(vertices):
        if v in seen:
            raise DegenerateInputError(f"path visits vertex {v} twice (position {k})")
        seen.add(v)
    for a, b in zip(vertices, vertices[1:]):
        if not g.has_edge(a, b):
            raise PathNotInGraphError(f"({a}, {b}) is not an edge of the graph")
    return vertices


def verify_path(g: GeomGraph, vertices: Sequence[int], mode: str = "tolerant") -> VerifyReport:
    """Run every path oracle on a vertex sequence of g."""
    _check_mode(mode)
    vertices = _check_vertices(g, vertices)
    coords = path_points(g, vertices)
    forward = is_self_approaching(coords, mode)
    backward = is_self_approaching(coords[::-1], mode)
    return VerifyReport(
        self_approaching_forward=forward,
        self_approaching_backward=backward,
        increasing_chord=forward and backward,
        theta_interval=infer_theta(coords),
        detour=detour(coords),
        greedy_forward=is_greedy(coords),
        greedy_backward=is_greedy(coords[::-1]),
        mode=mode,
    )


def exhaustive_increasing_chord_search(g: GeomGraph, s: int, t: int) -> Optional[PathWitness]:
    """
    Depth-first enumeration of simple paths from s to t, neighbours in ascending order.
    Prefixes that are not increasing-chord are pruned: every subpath of an increasing-chord
    path is increasing-chord.
    """
    if g.n > Config.EXHAUSTIVE_MAX_POINTS:
        raise SearchLimitError(
            f"exhaustive search is limited to {Config.EXHAUSTIVE_MAX_POINTS} points, got {g.n}"
        )
    for v in (s, t):
        if not 0 <= v < g.n:
            raise PathNotInGraphError(f"vertex {v} is out of range for {g.n} points")
    if s == t:
        raise DegenerateInputError(f"source and target coincide ({s})")

    coords = g.points.coords
    adjacency = g.adjacency
    explored = 0

    def extend(prefix: List[int]) -> Optional[List[int]]:
        nonlocal explored
        for w in adjacency[prefix[-1]]:
            if w in prefix:
                continue
            candidate = prefix + [w]
            explored += 1
            if not is_increasing_chord(coords[candidate]):
                continue
            if w == t:
                return candidate
            found = extend(candidate)
            if found is not None:
                return found
        return None

    vertices = extend([s])
    logger.debug(f"Exhaustive search {s}->{t} explored {explored} prefixes")
    if vertices is None:
        return None
    interval = infer_theta(coords[vertices])
    return PathWitness(vertices=vertices, theta_deg=None if interval is None else interval.midpoint_deg)
