"""
Seeded generators of test instances. Every generator re-checks its own output and
resamples on failure within Config.GENERATOR_MAX_RETRIES.
"""
import math
from typing import Optional

import numpy as np

from chordgraph import logger
from chordgraph.config import Config
from chordgraph.errors import DegenerateInputError, GeometryError
from chordgraph.geometry import Direction, PointSet, is_convex_position, is_generic, is_one_sided

AXES = (Direction(0.0), Direction(90.0))


def _stratified_angles(rng: np.random.Generator, n: int, start: float, span: float) -> np.ndarray:
    """Sorted angles in [start, start + span), one per stratum, at least a fifth of a stratum apart."""
    width = span / n
    return start + width * (np.arange(n) + 0.1 + 0.8 * rng.random(n))


def _generic_for(ps: PointSet, *directions: Direction) -> bool:
    return all(is_generic(ps, d) for d in directions)


def _check_size(n: int) -> None:
    if n < 2:
        raise ValueError(f"generators need at least two points, got {n}")


def gen_convex(n: int, seed: int, max_retries: Optional[int] = None) -> PointSet:
    """Points in convex position on a random ellipse with small radial jitter."""
    _check_size(n)
    rng = np.random.default_rng(seed)
    limit = Config.GENERATOR_MAX_RETRIES if max_retries is None else max_retries
    for attempt in range(limit):
        theta = _stratified_angles(rng, n, rng.uniform(0.0, 2.0 * math.pi), 2.0 * math.pi)
        gap = 2.0 * math.pi / n * 0.2
        radius = 1.0 + rng.uniform(-1.0, 1.0, n) * 0.05 * gap ** 2 / 2.0 ** attempt
        minor = rng.uniform(0.6, 1.0)
        tilt = rng.uniform(0.0, math.pi)
        local = np.column_stack([radius * np.cos(theta), minor * radius * np.sin(theta)])
        rotation = np.array([[math.cos(tilt), -math.sin(tilt)], [math.sin(tilt), math.cos(tilt)]])
        try:
            ps = PointSet(local @ rotation.T)
        except DegenerateInputError:
            continue
        if is_convex_position(ps) and _generic_for(ps, *AXES):
            if attempt:
                logger.debug(f"gen_convex(n={n}, seed={seed}) resampled {attempt} times")
            return ps
    raise GeometryError(f"gen_convex(n={n}) found no convex set within {limit} attempts")


def gen_onesided(n: int, d: Direction, seed: int, max_retries: Optional[int] = None) -> PointSet:
    """Points on a circular arc of less than a half-turn, one-sided with respect to d."""
    _check_size(n)
    rng = np.random.default_rng(seed)
    limit = Config.GENERATOR_MAX_RETRIES if max_retries is None else max_retries
    for attempt in range(limit):
        span = rng.uniform(0.4, 0.9) * math.pi
        side = 1.0 if rng.random() < 0.5 else -1.0
        centre = math.radians(d.angle_deg) + side * math.pi / 2.0
        theta = _stratified_angles(rng, n, centre - span / 2.0, span)
        try:
            ps = PointSet(np.column_stack([np.cos(theta), np.sin(theta)]))
        except DegenerateInputError:
            continue
        if (is_convex_position(ps) and _generic_for(ps, d, d.normal, *AXES)
                and is_one_sided(ps, d)):
            if attempt:
                logger.debug(f"gen_onesided(n={n}, seed={seed}) resampled {attempt} times")
            return ps
    raise GeometryError(f"gen_onesided(n={n}) found no one-sided set within {limit} attempts")


def gen_uniform(n: int, seed: int) -> PointSet:
    """Uniform random points in the unit square."""
    _check_size(n)
    return PointSet(np.random.default_rng(seed).random((n, 2)))


def lattice_side(n: int) -> int:
    """Side of the square lattice patch closest to n points."""
    return max(2, int(round(math.sqrt(n))))
