import os
import tempfile

_DB_DIR = tempfile.mkdtemp(prefix="chordgraph-tests-")
os.environ.setdefault("DATABASE_URL", f"sqlite:///{os.path.join(_DB_DIR, 'runs.db')}")

import math  # noqa: E402

import numpy as np  # noqa: E402
import pytest  # noqa: E402

from chordgraph.geometry import GeomGraph, PointSet  # noqa: E402


def regular_polygon(n: int, radius: float = 1.0, phase_deg: float = 7.0) -> PointSet:
    """Regular n-gon rotated off the axes so no edge or diagonal is axis-parallel for small n."""
    t = np.radians(phase_deg) + 2.0 * math.pi * np.arange(n) / n
    return PointSet(np.column_stack([radius * np.cos(t), radius * np.sin(t)]))


@pytest.fixture
def unit_square() -> PointSet:
    return PointSet.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def square_path(unit_square) -> GeomGraph:
    return GeomGraph.from_edges(unit_square, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def two_points() -> PointSet:
    return PointSet.from_points([(0, 0), (1, 0)])


@pytest.fixture
def db_url(tmp_path) -> str:
    return f"sqlite:///{tmp_path / 'history.db'}"
