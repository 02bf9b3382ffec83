"""
Increasing-chord graphs on convex point sets.

build_one_sided handles sets whose extremes along a direction are hull neighbours with
2n - 3 edges. build_convex splits a general convex set along the vertical direction into
two one-sided chains and joins the chains with build_cross, which recursively splits the
set with balanced partitions.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from chordgraph import logger
from chordgraph.errors import DegenerateInputError, NotConvexError, NotOneSidedError, PartitionError
from chordgraph.geometry import (
    Direction,
    Edge,
    GeomGraph,
    PointSet,
    first_projection_tie,
    hull_indices,
    is_convex_position,
    is_one_sided,
    perturb,
)
from chordgraph.models import PartitionQuad

VERTICAL = Direction(90.0)

# Fractions of a sweep interval tried, in order, when its midpoint is not generic
_NUDGES = (0.5, 0.25, 0.75, 0.125, 0.375, 0.625, 0.875, 0.0625, 0.9375)


@lru_cache(maxsize=None)
def edge_budget(n: int) -> int:
    """F(n) = 6 for n <= 4, else 2n + 2F(floor(n/2) + 1)."""
    if n <= 4:
        return 6
    return 2 * n + 2 * edge_budget(n // 2 + 1)


@dataclass
class CrossStats:
    max_depth: int = 0
    partitions: int = 0
    one_sided_edges: int = 0
    base_edges: int = 0


def _require_generic(sub: np.ndarray, ids: Sequence[int], d: Direction) -> None:
    pair = first_projection_tie(sub, d)
    if pair is not None:
        a, b = ids[pair[0]], ids[pair[1]]
        raise DegenerateInputError(
            f"direction {d.angle_deg:.9g} deg is orthogonal to the line through points {a} and {b}", (a, b)
        )


def _chains(sub: np.ndarray, hull: List[int], ids: Sequence[int], d: Direction) -> Tuple[List[int], List[int]]:
    """Clockwise chain from the d-minimum (inclusive) to the d-maximum (exclusive), and the rest."""
    if len(ids) == 0:
        return [], []
    if len(ids) == 1:
        return [ids[0]], []
    proj = sub @ d.vector
    lo, hi = int(np.argmin(proj)), int(np.argmax(proj))
    position = {v: k for k, v in enumerate(hull)}
    m = len(hull)
    first: List[int] = []
    k = position[lo]
    while hull[k] != hi:
        first.append(ids[hull[k]])
        k = (k - 1) % m
    second: List[int] = []
    while hull[k] != lo:
        second.append(ids[hull[k]])
        k = (k - 1) % m
    return first, second


def _convex_hull_of(xy: np.ndarray, ids: Sequence[int]) -> Tuple[np.ndarray, List[int]]:
    sub = xy[list(ids)]
    hull = hull_indices(sub)
    if len(hull) != len(ids):
        raise NotConvexError(f"{len(ids) - len(hull)} of {len(ids)} points are not in convex position")
    return sub, hull


def chain_split(ps: PointSet, d: Direction) -> Tuple[List[int], List[int]]:
    if not is_convex_position(ps):
        raise NotConvexError("chain split needs a point set in convex position")
    ids = list(range(len(ps)))
    sub, hull = _convex_hull_of(ps.coords, ids)
    _require_generic(sub, ids, d)
    return _chains(sub, hull, ids, d)


def _one_sided_edges(xy: np.ndarray, ids: Sequence[int], d: Direction) -> List[Edge]:
    """
    Work in the frame where d is the x-axis, with the chain above the segment joining the
    two extremes. Repeatedly remove the highest point and join it to its two neighbours on
    the current hull cycle; join the last two points.
    """
    ids = list(ids)
    if len(ids) <= 1:
        return []
    if len(ids) == 2:
        return [(min(ids), max(ids))]
    sub = xy[ids]
    x = sub @ d.vector
    y = sub @ d.normal.vector
    remaining = [int(k) for k in np.argsort(x, kind="stable")]
    lo, hi, inner = remaining[0], remaining[-1], remaining[1]
    side = (x[hi] - x[lo]) * (y[inner] - y[lo]) - (y[hi] - y[lo]) * (x[inner] - x[lo])
    if side < 0:
        y = -y

    edges: List[Edge] = []
    while len(remaining) > 2:
        k = max(range(len(remaining)), key=lambda i: y[remaining[i]])
        p = remaining[k]
        before = remaining[k - 1] if k > 0 else remaining[-1]
        after = remaining[k + 1] if k < len(remaining) - 1 else remaining[0]
        edges.append((p, before))
        edges.append((p, after))
        remaining.pop(k)
    edges.append((remaining[0], remaining[1]))
    return [(min(ids[a], ids[b]), max(ids[a], ids[b])) for a, b in edges]


def build_one_sided(ps: PointSet, d: Direction) -> GeomGraph:
    """Maximal outerplanar increasing-chord graph with exactly 2n - 3 edges."""
    n = len(ps)
    if n <= 1:
        return GeomGraph(ps)
    if not is_one_sided(ps, d):
        raise NotOneSidedError(f"point set is not one-sided with respect to {d.angle_deg:.9g} deg")
    ids = list(range(n))
    _require_generic(ps.coords, ids, d.normal)
    g = GeomGraph(ps, frozenset(_one_sided_edges(ps.coords, ids, d)))
    logger.debug(f"One-sided graph on {n} points has {g.edge_count} edges")
    return g


def _sweep_events(sub: np.ndarray, hull: List[int], d1: Direction) -> List[float]:
    """Clockwise offsets in (0, 180) from d1 of directions perpendicular to hull edges."""
    if len(hull) < 2:
        return []
    a = sub[hull]
    b = np.roll(a, -1, axis=0)
    if len(hull) == 2:
        a, b = a[:1], b[:1]
    angles = np.degrees(np.arctan2(b[:, 1] - a[:, 1], b[:, 0] - a[:, 0]))
    perpendicular = np.concatenate([angles + 90.0, angles - 90.0])
    offsets = (d1.angle_deg - perpendicular) % 360.0
    return sorted(float(o) for o in offsets if 0.0 < o < 180.0)


def _generic_direction_in(sub: np.ndarray, d1: Direction, lo: float, hi: float) -> Optional[Direction]:
    for fraction in _NUDGES:
        d2 = d1.rotated(-(lo + (hi - lo) * fraction))
        if first_projection_tie(sub, d2) is None and first_projection_tie(sub, d2.normal) is None:
            return d2
    return None


def _balanced_partition(xy: np.ndarray, ids: Sequence[int], d1: Direction,
                        first: Optional[Set[int]] = None) -> PartitionQuad:
    ids = list(ids)
    n = len(ids)
    sub, hull = _convex_hull_of(xy, ids)
    if first is None:
        first = set(_chains(sub, hull, ids, d1)[0])
    second = set(ids) - first

    boundaries = [0.0] + _sweep_events(sub, hull, d1) + [180.0]
    half = n // 2 + 1
    tried = 0
    fallback: Optional[PartitionQuad] = None
    for lo, hi in zip(boundaries, boundaries[1:]):
        if hi - lo <= 1e-12:
            continue
        d2 = _generic_direction_in(sub, d1, lo, hi)
        if d2 is None:
            continue
        tried += 1
        p1, p2 = _chains(sub, hull, ids, d2)
        quad = PartitionQuad(
            d1_deg=d1.angle_deg,
            d2_deg=d2.angle_deg,
            pa=sorted(v for v in p1 if v in first),
            pb=sorted(v for v in p2 if v in first),
            pc=sorted(v for v in p1 if v in second),
            pd=sorted(v for v in p2 if v in second),
        )
        if not quad.is_balanced(n):
            continue
        # Both recursive halves within floor(n/2) + 1 keeps the cross part inside F(n) for odd n
        if len(quad.pa) + len(quad.pd) <= half and len(quad.pb) + len(quad.pc) <= half:
            logger.debug(f"Balanced d2 = {d2.angle_deg:.6f} deg for {n} points after {tried} candidates")
            return quad
        fallback = fallback or quad
    if fallback is not None:
        logger.warning(f"Only a lopsided balanced partition exists for {n} points")
        return fallback
    raise PartitionError(f"no balanced direction among {tried} sweep candidates for {n} points")


def balanced_partition(ps: PointSet, d1: Direction, labels: Optional[Sequence[int]] = None) -> PartitionQuad:
    """
    Sweep d2 clockwise from d1 towards its opposite and return the first balanced
    (d1, d2)-partition. labels, when given, replaces the first chain of d1.
    """
    if not is_convex_position(ps):
        raise NotConvexError("balanced partition needs a point set in convex position")
    ids = list(range(len(ps)))
    _require_generic(ps.coords, ids, d1)
    first = None if labels is None else {int(v) for v in labels}
    return _balanced_partition(ps.coords, ids, d1, first)


def _cross_edges(xy: np.ndarray, ids: List[int], first: Set[int], d1: Direction,
                 depth: int, stats: CrossStats, edges: Set[Edge]) -> None:
    if not first or len(first) == len(ids):
        return
    stats.max_depth = max(stats.max_depth, depth)
    if len(ids) <= 4:
        before = len(edges)
        edges.update((min(a, b), max(a, b)) for k, a in enumerate(ids) for b in ids[k + 1:])
        stats.base_edges += len(edges) - before
        return

    quad = _balanced_partition(xy, ids, d1, first)
    stats.partitions += 1
    d2 = Direction(quad.d2_deg)
    for chain in (quad.pa + quad.pc, quad.pb + quad.pd):
        chain_edges = _one_sided_edges(xy, chain, d2)
        stats.one_sided_edges += len(chain_edges)
        edges.update(chain_edges)
    # Chain labels of d1 are carried down; recomputing them on a subset can move an extreme
    # point to the other side and leave its cross pairs uncovered.
    _cross_edges(xy, quad.pa + quad.pd, set(quad.pa), d1, depth + 1, stats, edges)
    _cross_edges(xy, quad.pb + quad.pc, set(quad.pb), d1, depth + 1, stats, edges)


def build_cross(ps: PointSet, d1: Direction, stats: Optional[CrossStats] = None) -> GeomGraph:
    """Graph with an increasing-chord path between every pair split by the chains of d1."""
    stats = stats if stats is not None else CrossStats()
    n = len(ps)
    if n <= 1:
        return GeomGraph(ps)
    if not is_convex_position(ps):
        raise NotConvexError("cross construction needs a point set in convex position")
    ids = list(range(n))
    _require_generic(ps.coords, ids, d1)
    if n <= 4:
        stats.base_edges = n * (n - 1) // 2
        return GeomGraph.complete(ps)
    first, _ = chain_split(ps, d1)
    edges: Set[Edge] = set()
    _cross_edges(ps.coords, ids, set(first), d1, 0, stats, edges)
    logger.debug(f"Cross graph on {n} points: {len(edges)} edges, depth {stats.max_depth}, "
                 f"{stats.partitions} partitions")
    return GeomGraph(ps, frozenset(edges))


def _rotation_ladder():
    yield 0.0
    for k in range(24):
        step = 1e-4 * 2.0 ** k
        yield step
        yield -step


def generic_vertical(ps: PointSet) -> Direction:
    """The vertical direction, or the nearest small rotation of it that is generic for ps."""
    for delta in _rotation_ladder():
        d = VERTICAL.rotated(delta)
        if first_projection_tie(ps.coords, d) is None and first_projection_tie(ps.coords, d.normal) is None:
            if delta:
                logger.info(f"Vertical direction is degenerate; using {d.angle_deg:.6f} deg")
            return d
    raise DegenerateInputError("no generic direction near the vertical")


def build_convex(ps: PointSet, perturb_seed: Optional[int] = None) -> GeomGraph:
    """
    Increasing-chord graph on a convex point set with at most 2n + F(n) edges. With
    perturb_seed the points are perturbed first and the graph spans the perturbed set.
    """
    if perturb_seed is not None:
        ps = perturb(ps, perturb_seed)
    n = len(ps)
    if n <= 1:
        return GeomGraph(ps)
    if not is_convex_position(ps):
        raise NotConvexError("build_convex needs a point set in convex position")

    direction = generic_vertical(ps)
    first, second = chain_split(ps, direction)
    edges = set(_one_sided_edges(ps.coords, first, direction))
    edges |= set(_one_sided_edges(ps.coords, second, direction))
    stats = CrossStats()
    edges |= build_cross(ps, direction, stats).edges
    g = GeomGraph(ps, frozenset(edges))
    logger.info(f"Convex graph on {n} points has {g.edge_count} edges "
                f"(budget {2 * n + edge_budget(n)}, recursion depth {stats.max_depth})")
    return g
