import json
import math
from datetime import datetime
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from chordgraph.config import Config
from chordgraph.geometry import GeomGraph, PointSet, normalize_deg


class AngularInterval(BaseModel):
    """Closed arc of directions, running counterclockwise from start_deg for width_deg degrees"""
    start_deg: float = Field(ge=0.0, lt=360.0, description="Arc start, normalized to [0, 360)")
    width_deg: float = Field(ge=0.0, le=360.0, description="Counterclockwise arc width")

    @property
    def end_deg(self) -> float:
        return (self.start_deg + self.width_deg) % 360.0

    @property
    def midpoint_deg(self) -> float:
        return (self.start_deg + self.width_deg / 2.0) % 360.0

    def contains(self, theta_deg: float, tolerance: Optional[float] = None) -> bool:
        tol = Config.ANGLE_TOLERANCE_DEG if tolerance is None else tolerance
        offset = (theta_deg - self.start_deg) % 360.0
        return offset <= self.width_deg + tol or offset >= 360.0 - tol

    def shifted(self, delta_deg: float) -> "AngularInterval":
        return AngularInterval(start_deg=normalize_deg(self.start_deg + delta_deg), width_deg=self.width_deg)

    def approx_equal(self, other: "AngularInterval", tolerance: float = 1e-7) -> bool:
        gap = abs((self.start_deg - other.start_deg + 180.0) % 360.0 - 180.0)
        return gap <= tolerance and abs(self.width_deg - other.width_deg) <= tolerance


class PathWitness(BaseModel):
    """A vertex sequence in a host graph and the θ certifying it, if any"""
    vertices: List[int] = Field(min_length=2, description="Point indices in traversal order")
    theta_deg: Optional[float] = Field(default=None, description="Direction certifying a θ-path")

    @field_validator("vertices")
    @classmethod
    def _consecutive_distinct(cls, vertices: List[int]) -> List[int]:
        for a, b in zip(vertices, vertices[1:]):
            if a == b:
                raise ValueError(f"vertex {a} is repeated consecutively")
        return vertices

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return [(min(a, b), max(a, b)) for a, b in zip(self.vertices, self.vertices[1:])]

    def reversed(self) -> "PathWitness":
        theta = None if self.theta_deg is None else (self.theta_deg + 180.0) % 360.0
        return PathWitness(vertices=list(reversed(self.vertices)), theta_deg=theta)


class VerifyReport(BaseModel):
    """Verdicts of the path oracles on one path"""
    self_approaching_forward: bool
    self_approaching_backward: bool
    increasing_chord: bool
    theta_interval: Optional[AngularInterval] = None
    detour: float = Field(ge=1.0 - 1e-12)
    greedy_forward: bool = True
    greedy_backward: bool = True
    mode: str = "tolerant"

    @model_validator(mode="after")
    def _consistent(self) -> "VerifyReport":
        if self.increasing_chord != (self.self_approaching_forward and self.self_approaching_backward):
            raise ValueError("increasing_chord must equal forward and backward self-approach")
        return self

    @property
    def passed(self) -> bool:
        return self.increasing_chord and self.detour <= Config.DETOUR_BOUND + 1e-6


class ThetaSubgraph(BaseModel):
    theta_deg: float
    arcs: List[Tuple[int, int]] = Field(default_factory=list, description="Directed pairs u -> v")


class PartitionQuad(BaseModel):
    """Four-way split of a convex point set by the chains of two directions"""
    d1_deg: float
    d2_deg: float
    pa: List[int] = Field(default_factory=list, description="First chain of d1 and first chain of d2")
    pb: List[int] = Field(default_factory=list, description="First chain of d1 and second chain of d2")
    pc: List[int] = Field(default_factory=list, description="Second chain of d1 and first chain of d2")
    pd: List[int] = Field(default_factory=list, description="Second chain of d1 and second chain of d2")

    @property
    def size(self) -> int:
        return len(self.pa) + len(self.pb) + len(self.pc) + len(self.pd)

    def is_balanced(self, n: Optional[int] = None) -> bool:
        n = self.size if n is None else n
        return (len(self.pa) + len(self.pd) <= n // 2 + 1
                and len(self.pb) + len(self.pc) <= (n + 1) // 2 + 1)

    def partitions(self, indices: List[int]) -> bool:
        parts = [set(self.pa), set(self.pb), set(self.pc), set(self.pd)]
        union = set().union(*parts)
        return union == set(indices) and sum(len(p) for p in parts) == len(union)


class EdgeBudget(BaseModel):
    n: int = Field(ge=0)
    bound: int = Field(ge=0, description="F(n) = 6 for n <= 4, else 2n + 2F(floor(n/2) + 1)")

    @classmethod
    def for_size(cls, n: int) -> "EdgeBudget":
        from chordgraph.convex import edge_budget
        return cls(n=n, bound=edge_budget(n))

    @property
    def convex_bound(self) -> int:
        """Bound on the whole convex construction: two one-sided chains plus the cross part."""
        return 2 * self.n + self.bound


class GabrielCheck(BaseModel):
    ok: bool
    reason: Optional[str] = None
    face_count: int = 0
    min_angle_deg: Optional[float] = None
    max_angle_deg: Optional[float] = None


class RunReport(BaseModel):
    """Outcome of a construction or verification run"""
    command: str = Field(description="Echo of the command that produced the report")
    n: int = 0
    edge_count: int = 0
    budget_bound: Optional[int] = None
    pairs_tested: int = 0
    failures: int = 0
    failed_pairs: List[Tuple[int, int]] = Field(default_factory=list)
    max_detour: Optional[float] = None
    steiner_count: Optional[int] = None
    seed: Optional[int] = None
    elapsed_seconds: Optional[float] = Field(default=None, description="Excluded from the canonical form")

    @property
    def passed(self) -> bool:
        within_budget = self.budget_bound is None or self.edge_count <= self.budget_bound
        return self.failures == 0 and within_budget

    def canonical_json(self, include_timing: bool = False) -> str:
        exclude = None if include_timing else {"elapsed_seconds"}
        return json.dumps(self.model_dump(exclude=exclude), sort_keys=True, indent=2)


class GraphDocument(BaseModel):
    """On-disk form of a geometric graph"""
    points: List[Tuple[float, float]] = Field(default_factory=list)
    edges: List[Tuple[int, int]] = Field(default_factory=list)

    @field_validator("points")
    @classmethod
    def _finite(cls, points: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        for k, (x, y) in enumerate(points):
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError(f"point {k} has a non-finite coordinate")
        return points

    @model_validator(mode="after")
    def _edges_normalized(self) -> "GraphDocument":
        n = len(self.points)
        for i, j in self.edges:
            if i >= j:
                raise ValueError(f"edge [{i}, {j}] is not normalized; write it as [{min(i, j)}, {max(i, j)}]")
            if i < 0 or j >= n:
                raise ValueError(f"edge [{i}, {j}] is out of range for {n} points")
        return self

    @classmethod
    def from_graph(cls, g: GeomGraph) -> "GraphDocument":
        return cls(points=[(x, y) for x, y in g.points], edges=g.sorted_edges())

    def to_graph(self) -> GeomGraph:
        return GeomGraph(PointSet.from_points(self.points), frozenset(self.edges))

    def canonical_json(self) -> str:
        payload = {"points": [[x, y] for x, y in self.points], "edges": [list(e) for e in sorted(self.edges)]}
        return json.dumps(payload, separators=(",", ":"))


# Service request/response bodies

class PointsRequest(BaseModel):
    points: List[Tuple[float, float]] = Field(min_length=1, description="Input coordinates")
    perturb_seed: Optional[int] = Field(default=None, description="Apply a seeded perturbation first")


class OneSidedRequest(PointsRequest):
    direction_deg: float = Field(description="Direction the set is one-sided with respect to")


class GabrielRequest(PointsRequest):
    method: str = Field(default="brute", description="'brute' or 'delaunay'")


class GraphResponse(BaseModel):
    graph: GraphDocument
    edge_count: int
    budget_bound: Optional[int] = None
    gabriel: Optional[GabrielCheck] = None


class RouteRequest(BaseModel):
    graph: GraphDocument
    source: int = Field(ge=0)
    target: int = Field(ge=0)


class RouteResponse(BaseModel):
    found: bool
    witness: Optional[PathWitness] = None
    report: Optional[VerifyReport] = None


class VerifyPathRequest(BaseModel):
    graph: GraphDocument
    path: List[int] = Field(min_length=2)
    mode: str = Field(default="tolerant", description="'tolerant' or 'strict'")


class PipelineRequest(BaseModel):
    kind: str = Field(description="'convex', 'onesided', 'lattice' or 'augment'")
    n: int = Field(default=16, ge=2, le=2000)
    seed: int = 0
    jitter: float = Field(default=0.05, ge=0.0, lt=0.2)
    record: bool = True


class PipelineState(BaseModel):
    """State of a pipeline run"""
    kind: str
    n: int
    seed: int
    graph: Optional[GraphDocument] = None
    report: Optional[RunReport] = None
    summary: Optional[str] = None
    record_id: Optional[int] = None
    error: Optional[str] = None
    timestamp: datetime = Field(default_factory=datetime.now)


class PipelineResponse(BaseModel):
    success: bool
    state: PipelineState
    execution_time: float


def state_to_model(state: Dict[str, Any]) -> PipelineState:
    graph = state.get("graph")
    return PipelineState(
        kind=state.get("kind", ""),
        n=state.get("n", 0),
        seed=state.get("seed", 0),
        graph=GraphDocument.from_graph(graph) if graph is not None else None,
        report=state.get("report"),
        summary=state.get("summary"),
        record_id=state.get("record_id"),
        error=state.get("error"),
        timestamp=datetime.fromtimestamp(state.get("timestamp", datetime.now().timestamp())),
    )
