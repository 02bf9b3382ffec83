import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordgraph.errors import DegenerateInputError, PathNotInGraphError
from chordgraph.gabriel import gabriel_graph
from chordgraph.generators import gen_uniform
from chordgraph.geometry import GeomGraph, PointSet, angle_diff
from chordgraph.oracle import exhaustive_increasing_chord_search, is_increasing_chord, is_theta_path
from chordgraph.routing import ThetaRouter, candidate_thetas, route, theta_subgraph
from chordgraph.steiner import gabriel_lattice


def _edge(x, y) -> GeomGraph:
    return GeomGraph.complete(PointSet.from_points([(0, 0), (x, y)]))


def _assert_sound(g: GeomGraph, witness) -> None:
    coords = g.points.coords[witness.vertices]
    assert all(g.has_edge(a, b) for a, b in zip(witness.vertices, witness.vertices[1:]))
    assert is_theta_path(coords, witness.theta_deg)
    assert is_increasing_chord(coords)


class TestThetaSubgraph:
    def test_edge_inside_the_wedge(self):
        g = _edge(np.cos(np.radians(30)), np.sin(np.radians(30)))
        assert theta_subgraph(g, 0.0).arcs == [(0, 1)]

    def test_edge_outside_in_both_directions(self):
        g = _edge(np.cos(np.radians(50)), np.sin(np.radians(50)))
        assert theta_subgraph(g, 0.0).arcs == []

    def test_wedge_is_closed(self):
        assert theta_subgraph(_edge(1, 1), 0.0).arcs == [(0, 1)]

    def test_arcs_increase_projection(self):
        g = gabriel_graph(gen_uniform(25, seed=2))
        theta = 33.0
        u = np.array([np.cos(np.radians(theta)), np.sin(np.radians(theta))])
        xy = g.points.coords
        for a, b in theta_subgraph(g, theta).arcs:
            assert (xy[b] - xy[a]) @ u > 0

    def test_subgraph_is_constant_between_critical_values(self):
        g = gabriel_graph(gen_uniform(20, seed=9))
        router = ThetaRouter(g)
        crit = router.critical_thetas
        for lo, hi in zip(crit, np.roll(crit, -1)):
            gap = (hi - lo) % 360.0
            first = router.subgraph(lo + 0.25 * gap).arcs
            second = router.subgraph(lo + 0.75 * gap).arcs
            assert first == second


class TestCandidates:
    def test_single_edge(self, two_points):
        values = candidate_thetas(GeomGraph.complete(two_points), 0, 1)
        assert values[0] == pytest.approx(0.0)
        for expected in (45.0, 315.0, 135.0, 225.0):
            assert any(abs(float(angle_diff(v, expected))) < 1e-9 for v in values)

    def test_empty_graph(self, two_points):
        assert candidate_thetas(GeomGraph(two_points), 1, 0) == [pytest.approx(180.0)]

    def test_ordered_by_distance_from_direct_slope(self, unit_square):
        g = GeomGraph.complete(unit_square)
        values = candidate_thetas(g, 0, 2)
        distances = np.abs(angle_diff(np.array(values), 45.0))
        assert np.all(np.diff(distances) >= -1e-12)

    def test_triangle_critical_count(self):
        ps = PointSet.from_points([(0, 0), (1, 0), (0.5, np.sqrt(3) / 2)])
        router = ThetaRouter(GeomGraph.complete(ps))
        assert len(router.critical_thetas) <= 12

    def test_invalid_pairs(self, two_points):
        g = GeomGraph.complete(two_points)
        with pytest.raises(PathNotInGraphError):
            candidate_thetas(g, 0, 5)
        with pytest.raises(DegenerateInputError):
            candidate_thetas(g, 1, 1)


class TestRoute:
    def test_single_edge(self, two_points):
        witness = route(GeomGraph.complete(two_points), 0, 1)
        assert witness.vertices == [0, 1]
        assert witness.theta_deg == pytest.approx(0.0)

    def test_disconnected_clusters(self):
        ps = PointSet.from_points([(0, 0), (0.1, 0.05), (10, 10), (10.1, 10.02)])
        g = GeomGraph.from_edges(ps, [(0, 1), (2, 3)])
        assert route(g, 0, 3) is None

    def test_deterministic(self):
        g = gabriel_graph(gen_uniform(30, seed=1))
        assert route(g, 0, 17) == route(g, 0, 17)

    def test_every_pair_of_a_gabriel_lattice(self):
        instance = gabriel_lattice(4, 4, jitter=0.05, seed=3)
        g = instance.graph
        router = ThetaRouter(g)
        for s, t in itertools.permutations(range(g.n), 2):
            witness = router.route(s, t)
            assert witness is not None, (s, t)
            _assert_sound(g, witness)

    def test_agrees_with_exhaustive_search_on_small_lattices(self):
        g = gabriel_lattice(3, 3, jitter=0.05, seed=11).graph
        router = ThetaRouter(g)
        for s, t in itertools.combinations(range(g.n), 2):
            if router.route(s, t) is not None:
                assert exhaustive_increasing_chord_search(g, s, t) is not None

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10_000))
    def test_witnesses_are_sound(self, seed):
        g = gabriel_graph(gen_uniform(18, seed))
        router = ThetaRouter(g)
        rng = np.random.default_rng(seed)
        for _ in range(10):
            s, t = (int(v) for v in rng.choice(g.n, size=2, replace=False))
            witness = router.route(s, t)
            if witness is not None:
                _assert_sound(g, witness)
