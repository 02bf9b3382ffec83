import json

import pytest

from chordgraph.geometry import GeomGraph, PointSet
from chordgraph.models import RunReport
from chordgraph.reports import budget_table, select_pairs, verify_graph


class TestSelectPairs:
    def test_all(self):
        assert select_pairs(4) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

    def test_sample_is_seeded_and_sorted(self):
        first = select_pairs(30, 20, seed=3)
        assert first == select_pairs(30, 20, seed=3)
        assert first == sorted(first)
        assert len(set(first)) == 20

    def test_oversized_sample(self):
        assert len(select_pairs(5, 100)) == 10

    def test_negative_sample(self):
        with pytest.raises(ValueError):
            select_pairs(5, -1)


class TestVerifyGraph:
    def test_complete_triangle(self):
        g = GeomGraph.complete(PointSet.from_points([(0, 0), (1, 0), (0.5, 0.8)]))
        report = verify_graph(g)
        assert report.pairs_tested == 3
        assert report.passed
        assert report.max_detour == pytest.approx(1.0)

    def test_failures_are_listed(self, unit_square):
        g = GeomGraph.from_edges(unit_square, [(0, 1), (1, 2), (2, 3)])
        report = verify_graph(g)
        assert not report.passed
        assert (0, 3) in report.failed_pairs
        assert report.failures == len(report.failed_pairs)

    def test_budget_counts_towards_passing(self, square_path):
        report = verify_graph(GeomGraph.from_edges(square_path.points, [(0, 1)]), pairs=0, budget_bound=0)
        assert report.pairs_tested == 0
        assert not report.passed


class TestRunReport:
    def test_canonical_json_drops_timing(self):
        report = RunReport(command="verify graph", n=3, edge_count=3, elapsed_seconds=1.25)
        data = json.loads(report.canonical_json())
        assert "elapsed_seconds" not in data
        assert json.loads(report.canonical_json(include_timing=True))["elapsed_seconds"] == 1.25

    def test_deterministic(self):
        g = GeomGraph.complete(PointSet.from_points([(0, 0), (1, 0.1), (0.4, 0.9), (1.3, 1.2)]))
        assert verify_graph(g, seed=1).canonical_json() == verify_graph(g, seed=1).canonical_json()


def test_budget_table():
    table = budget_table([8, 16], seed=2)
    assert list(table.columns) == ["n", "edges", "bound", "within_budget", "ratio"]
    assert table["within_budget"].all()
    assert table.loc[table["n"] == 16, "bound"].item() == 32 + 156
