import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from chordgraph.errors import DegenerateInputError, PathNotInGraphError, SearchLimitError
from chordgraph.geometry import GeomGraph, PointSet
from chordgraph.models import PathWitness
from chordgraph.oracle import (
    approach_margins,
    detour,
    edge_slopes,
    exhaustive_increasing_chord_search,
    infer_theta,
    is_greedy,
    is_increasing_chord,
    is_self_approaching,
    is_theta_path,
    sampled_self_approaching,
    verify_path,
)

from conftest import regular_polygon

STRAIGHT = [(0, 0), (1, 0), (2, 0)]
RIGHT_TURN = [(0, 0), (1, 0), (1, 1)]
DOUBLING_BACK = [(0, 0), (2, 0), (1, 1)]


class TestSelfApproaching:
    def test_straight_path(self):
        assert is_self_approaching(STRAIGHT)
        assert is_self_approaching(STRAIGHT, mode="strict")

    def test_right_angle_sits_on_the_boundary(self):
        assert is_self_approaching(RIGHT_TURN)
        assert not is_self_approaching(RIGHT_TURN, mode="strict")

    def test_doubling_back_fails(self):
        assert not is_self_approaching(DOUBLING_BACK)
        assert approach_margins(DOUBLING_BACK)[0] == pytest.approx(-1.0)

    def test_single_edge_has_no_margins(self):
        assert len(approach_margins([(0, 0), (3, 4)])) == 0
        assert is_self_approaching([(0, 0), (3, 4)], mode="strict")

    def test_repeated_consecutive_points(self):
        with pytest.raises(DegenerateInputError):
            is_self_approaching([(0, 0), (1, 0), (1, 0)])

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            is_self_approaching(STRAIGHT, mode="loose")


class TestIncreasingChord:
    def test_single_edge(self):
        assert is_increasing_chord([(0, 0), (5, -2)])

    def test_right_turn_both_ways(self):
        assert is_increasing_chord(RIGHT_TURN)

    def test_hook_back_fails(self):
        path = [(0, 0), (1, 0), (0.9, 0.1)]
        assert not is_self_approaching(path[::-1])
        assert not is_increasing_chord(path)


class TestSampledOracle:
    def test_agrees_on_known_paths(self):
        assert sampled_self_approaching(STRAIGHT)
        assert sampled_self_approaching(RIGHT_TURN)
        assert not sampled_self_approaching(DOUBLING_BACK)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=3, max_size=5))
    def test_agrees_with_margin_test_away_from_the_boundary(self, raw):
        path = np.array(raw, dtype=float)
        steps = np.hypot(*np.diff(path, axis=0).T)
        assume(np.all(steps > 0))
        margins = approach_margins(path)
        assume(np.all(np.abs(margins) > 0.1))
        assert sampled_self_approaching(path) == is_self_approaching(path)


class TestThetaPaths:
    def test_boundary_slope_is_included(self):
        assert is_theta_path([(0, 0), (1, 0), (2, 1)], 0.0)
        assert is_theta_path([(0, 0), (1, 1), (2, 0)], 0.0)

    def test_vertical_edge_is_not_a_zero_edge(self):
        assert not is_theta_path([(0, 0), (0, 1)], 0.0)

    def test_slopes(self):
        assert edge_slopes(RIGHT_TURN) == pytest.approx([0.0, 90.0])

    def test_infer_single_edge(self):
        interval = infer_theta([(0, 0), (1, 0)])
        assert interval.start_deg == pytest.approx(315.0)
        assert interval.width_deg == pytest.approx(90.0)
        assert interval.contains(0.0) and interval.contains(45.0) and not interval.contains(46.0)

    def test_infer_quarter_turn_gives_one_direction(self):
        interval = infer_theta(RIGHT_TURN)
        assert interval.width_deg == pytest.approx(0.0, abs=1e-9)
        assert interval.midpoint_deg == pytest.approx(45.0)

    def test_infer_reversal_is_empty(self):
        assert infer_theta([(0, 0), (1, 0), (0.5, 0.0)]) is None

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(-40.0, 40.0, allow_nan=False), min_size=1, max_size=6),
           st.floats(0.0, 359.0, allow_nan=False))
    def test_theta_paths_are_increasing_chord(self, offsets, theta):
        angles = np.radians(theta + np.array(offsets))
        path = np.vstack([[0.0, 0.0], np.cumsum(np.column_stack([np.cos(angles), np.sin(angles)]), axis=0)])
        assert is_theta_path(path, theta)
        assert is_increasing_chord(path)
        assert is_greedy(path) and is_greedy(path[::-1])
        interval = infer_theta(path)
        assert interval is not None and interval.contains(theta, tolerance=1e-6)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(-40.0, 40.0, allow_nan=False), min_size=1, max_size=6),
           st.floats(0.0, 359.0, allow_nan=False))
    def test_reversal_turns_the_interval_half_way(self, offsets, theta):
        angles = np.radians(theta + np.array(offsets))
        path = np.vstack([[0.0, 0.0], np.cumsum(np.column_stack([np.cos(angles), np.sin(angles)]), axis=0)])
        forward = infer_theta(path)
        backward = infer_theta(path[::-1])
        assert backward.approx_equal(forward.shifted(180.0))

        witness = PathWitness(vertices=list(range(len(path))), theta_deg=theta).reversed()
        assert witness.vertices[0] == len(path) - 1
        assert is_theta_path(path[witness.vertices], witness.theta_deg)


class TestDetourAndGreedy:
    def test_single_edge_detour(self):
        assert detour([(0, 0), (3, 4)]) == 1.0

    def test_right_turn_detour(self):
        assert detour(RIGHT_TURN) == pytest.approx(2.0 / np.sqrt(2.0))

    def test_closed_path_has_no_detour(self):
        with pytest.raises(DegenerateInputError):
            detour([(0, 0), (1, 0), (0, 0)])

    def test_greedy(self):
        assert is_greedy(STRAIGHT)
        assert not is_greedy([(0, 0), (-1, 0), (2, 0)])


class TestVerifyPath:
    def test_report(self, square_path):
        report = verify_path(square_path, [0, 1, 2])
        assert report.increasing_chord
        assert report.theta_interval is not None
        assert report.passed

    def test_failing_path(self, square_path):
        report = verify_path(square_path, [0, 1, 2, 3])
        assert not report.increasing_chord
        assert not report.passed

    def test_repeated_vertex(self, unit_square):
        g = GeomGraph.complete(unit_square)
        with pytest.raises(DegenerateInputError):
            verify_path(g, [0, 1, 2, 0])

    def test_non_edge_and_range(self, square_path):
        with pytest.raises(PathNotInGraphError):
            verify_path(square_path, [0, 2])
        with pytest.raises(PathNotInGraphError):
            verify_path(square_path, [0, 7])


class TestExhaustiveSearch:
    def test_single_edge(self, two_points):
        g = GeomGraph.complete(two_points)
        witness = exhaustive_increasing_chord_search(g, 0, 1)
        assert witness.vertices == [0, 1]
        assert witness.theta_deg == pytest.approx(0.0, abs=1e-9) or witness.theta_deg == pytest.approx(360.0)

    def test_triangle_uses_the_direct_edge(self):
        g = GeomGraph.complete(PointSet.from_points([(0, 0), (1, 0), (0.4, 0.8)]))
        for s, t in [(0, 1), (1, 2), (2, 0)]:
            assert exhaustive_increasing_chord_search(g, s, t).vertices == [s, t]

    def test_only_the_flat_detour_qualifies(self):
        ps = PointSet.from_points([(0, 0), (1, 3), (2, 0), (1, 0.2)])
        g = GeomGraph.from_edges(ps, [(0, 1), (1, 2), (0, 3), (2, 3)])
        witness = exhaustive_increasing_chord_search(g, 0, 2)
        assert witness.vertices == [0, 3, 2]
        assert is_theta_path(ps.coords[witness.vertices], witness.theta_deg)

    def test_disconnected(self, unit_square):
        g = GeomGraph.from_edges(unit_square, [(0, 1)])
        assert exhaustive_increasing_chord_search(g, 0, 2) is None

    def test_size_limit(self):
        g = GeomGraph(regular_polygon(13))
        with pytest.raises(SearchLimitError):
            exhaustive_increasing_chord_search(g, 0, 1)
