"""
θ-path routing.

Between two consecutive critical directions the set of θ-edges does not change, so
trying every critical value and every midpoint between neighbours covers all distinct
θ-edge subgraphs. Each search is a breadth-first reachability over directed arcs whose
slope lies in the closed wedge [θ - 45, θ + 45].
"""
from typing import Dict, List, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from chordgraph import logger
from chordgraph.config import Config
from chordgraph.errors import DegenerateInputError, PathNotInGraphError
from chordgraph.geometry import GeomGraph, angle_diff, normalize_deg, slope_deg
from chordgraph.models import PathWitness, ThetaSubgraph

_UNREACHED = -9999
_CACHE_LIMIT = 4096


def _dedupe_circular(values: np.ndarray, tol: float) -> np.ndarray:
    values = np.sort(np.asarray(values, dtype=float) % 360.0)
    if len(values) == 0:
        return values
    kept = [values[0]]
    for v in values[1:]:
        if v - kept[-1] > tol:
            kept.append(v)
    if len(kept) > 1 and kept[0] + 360.0 - kept[-1] <= tol:
        kept.pop()
    return np.array(kept)


class ThetaRouter:
    """Routes θ-paths in one graph, reusing arc slopes and θ-edge adjacency across queries."""

    def __init__(self, g: GeomGraph):
        self.graph = g
        edges = g.edge_array
        self._tails = np.concatenate([edges[:, 0], edges[:, 1]])
        self._heads = np.concatenate([edges[:, 1], edges[:, 0]])
        xy = g.points.coords
        delta = xy[self._heads] - xy[self._tails]
        self._slopes = np.degrees(np.arctan2(delta[:, 1], delta[:, 0])) % 360.0
        self._critical = _dedupe_circular(
            np.concatenate([self._slopes - 45.0, self._slopes + 45.0]), Config.ANGLE_TOLERANCE_DEG
        )
        self._midpoints = self._critical_midpoints()
        self._matrices: Dict[float, csr_matrix] = {}

    def _critical_midpoints(self) -> np.ndarray:
        crit = self._critical
        if len(crit) == 0:
            return crit
        following = np.roll(crit, -1)
        gaps = (following - crit) % 360.0
        gaps[gaps == 0] = 360.0
        return (crit + gaps / 2.0) % 360.0

    @property
    def critical_thetas(self) -> np.ndarray:
        return self._critical

    def _arc_mask(self, theta_deg: float) -> np.ndarray:
        return np.abs(angle_diff(self._slopes, theta_deg)) <= 45.0 + Config.ANGLE_TOLERANCE_DEG

    def subgraph(self, theta_deg: float) -> ThetaSubgraph:
        mask = self._arc_mask(theta_deg)
        arcs = sorted(zip(self._tails[mask].tolist(), self._heads[mask].tolist()))
        return ThetaSubgraph(theta_deg=normalize_deg(theta_deg), arcs=arcs)

    def _matrix(self, theta_deg: float) -> csr_matrix:
        key = round(theta_deg, 12)
        matrix = self._matrices.get(key)
        if matrix is None:
            mask = self._arc_mask(theta_deg)
            n = self.graph.n
            matrix = csr_matrix(
                (np.ones(int(mask.sum())), (self._tails[mask], self._heads[mask])), shape=(n, n)
            )
            matrix.sort_indices()
            if len(self._matrices) >= _CACHE_LIMIT:
                self._matrices.clear()
            self._matrices[key] = matrix
        return matrix

    def _check_pair(self, s: int, t: int) -> None:
        for v in (s, t):
            if not 0 <= v < self.graph.n:
                raise PathNotInGraphError(f"vertex {v} is out of range for {self.graph.n} points")
        if s == t:
            raise DegenerateInputError(f"source and target coincide ({s})")

    def candidates(self, s: int, t: int) -> List[float]:
        """Critical values, their midpoints and slope(s->t), nearest to slope(s->t) first."""
        self._check_pair(s, t)
        xy = self.graph.points.coords
        direct = slope_deg(xy[s], xy[t])
        values = _dedupe_circular(
            np.concatenate([self._critical, self._midpoints, [direct]]), Config.ANGLE_TOLERANCE_DEG
        )
        distance = np.abs(angle_diff(values, direct))
        order = np.lexsort((values, distance))
        return [float(v) for v in values[order]]

    def search(self, s: int, t: int, theta_deg: float) -> Optional[List[int]]:
        """Breadth-first θ-path from s to t, neighbours in ascending index order."""
        _, predecessors = breadth_first_order(
            self._matrix(theta_deg), s, directed=True, return_predecessors=True
        )
        if predecessors[t] == _UNREACHED:
            return None
        vertices = [t]
        while vertices[-1] != s:
            vertices.append(int(predecessors[vertices[-1]]))
        return vertices[::-1]

    def route(self, s: int, t: int) -> Optional[PathWitness]:
        candidates = self.candidates(s, t)
        for tried, theta in enumerate(candidates, start=1):
            vertices = self.search(s, t, theta)
            if vertices is not None:
                logger.debug(f"Route {s}->{t} found with theta {theta:.6f} after {tried} candidates")
                return PathWitness(vertices=vertices, theta_deg=theta)
        logger.debug(f"No theta-path {s}->{t} among {len(candidates)} candidates")
        return None


def theta_subgraph(g: GeomGraph, theta_deg: float) -> ThetaSubgraph:
    return ThetaRouter(g).subgraph(theta_deg)


def candidate_thetas(g: GeomGraph, s: int, t: int) -> List[float]:
    return ThetaRouter(g).candidates(s, t)


def route(g: GeomGraph, s: int, t: int) -> Optional[PathWitness]:
    return ThetaRouter(g).route(s, t)
