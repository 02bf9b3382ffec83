import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordgraph.errors import (
    CrossingEdgesError,
    DisconnectedGraphError,
    GeometryError,
    NonTriangularFaceError,
)
from chordgraph.gabriel import (
    check_gabriel_triangulation,
    delaunay_graph,
    face_angles,
    faces_of,
    gabriel_graph,
    is_gabriel_triangulation,
    necessity_check,
)
from chordgraph.generators import gen_uniform
from chordgraph.geometry import GeomGraph, PointSet, crossing_free

EQUILATERAL = PointSet.from_points([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
RIGHT_ISOSCELES = PointSet.from_points([(0, 0), (1, 0), (0, 1)])
OBTUSE = PointSet.from_points([(0, 0), (4, 0), (2, 0.1)])


class TestGabrielGraph:
    def test_equilateral_triangle_keeps_every_edge(self):
        assert gabriel_graph(EQUILATERAL).sorted_edges() == [(0, 1), (0, 2), (1, 2)]

    def test_point_on_the_disk_boundary_kills_the_edge(self):
        assert gabriel_graph(RIGHT_ISOSCELES).sorted_edges() == [(0, 1), (0, 2)]

    def test_two_points(self, two_points):
        assert gabriel_graph(two_points).sorted_edges() == [(0, 1)]

    def test_unknown_method(self, unit_square):
        with pytest.raises(ValueError):
            gabriel_graph(unit_square, method="voronoi")

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10_000), st.integers(3, 40))
    def test_delaunay_filter_agrees_with_brute_force(self, seed, n):
        ps = gen_uniform(n, seed)
        brute = gabriel_graph(ps)
        assert gabriel_graph(ps, method="delaunay").edges == brute.edges
        assert brute.edges <= delaunay_graph(ps).edges

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10_000))
    def test_permuting_ids_permutes_edges(self, seed):
        ps = gen_uniform(15, seed)
        perm = np.random.default_rng(seed).permutation(15)
        shuffled = PointSet(ps.coords[perm])
        back = {(min(int(perm[i]), int(perm[j])), max(int(perm[i]), int(perm[j])))
                for i, j in gabriel_graph(shuffled).edges}
        assert back == set(gabriel_graph(ps).edges)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10_000))
    def test_output_is_crossing_free(self, seed):
        assert crossing_free(gabriel_graph(gen_uniform(30, seed)))


class TestFaces:
    def test_triangle(self):
        tri = faces_of(GeomGraph.complete(EQUILATERAL))
        assert tri.internal_faces == ((0, 1, 2),)
        assert tri.outer_face == (0, 1, 2)

    def test_quadrilateral_with_diagonal(self, unit_square):
        g = GeomGraph.from_edges(unit_square, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
        tri = faces_of(g)
        assert tri.face_count == 2
        assert tri.outer_face == (0, 1, 2, 3)

    def test_quadrilateral_without_diagonal(self, unit_square):
        g = GeomGraph.from_edges(unit_square, [(0, 1), (1, 2), (2, 3), (0, 3)])
        with pytest.raises(NonTriangularFaceError):
            faces_of(g)

    def test_crossing(self, unit_square):
        with pytest.raises(CrossingEdgesError):
            faces_of(GeomGraph.complete(unit_square))

    def test_disconnected(self, unit_square):
        with pytest.raises(DisconnectedGraphError):
            faces_of(GeomGraph.from_edges(unit_square, [(0, 1), (2, 3)]))

    def test_interior_point_fan(self):
        ps = PointSet.from_points([(0, 0), (2, 0), (1, 2), (1, 0.6)])
        tri = faces_of(GeomGraph.complete(ps))
        assert tri.face_count == 3
        assert tri.outer_face == (0, 1, 2)

    def test_angles_sum_to_half_turn(self):
        assert sum(face_angles(OBTUSE.coords, (0, 1, 2))) == pytest.approx(180.0)


class TestGabrielTriangulation:
    def test_equilateral(self):
        check = check_gabriel_triangulation(GeomGraph.complete(EQUILATERAL))
        assert check.ok
        assert check.face_count == 1
        assert check.max_angle_deg == pytest.approx(60.0)

    def test_square_with_diagonal_has_right_angles(self, unit_square):
        g = GeomGraph.from_edges(unit_square, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
        assert not is_gabriel_triangulation(g)

    def test_obtuse_triangle(self):
        check = check_gabriel_triangulation(GeomGraph.complete(OBTUSE))
        assert not check.ok
        assert check.max_angle_deg > 170.0

    def test_outer_face_must_be_the_hull(self):
        ps = PointSet.from_points([(0, 0), (2, 0), (1, 2), (1, 0.5)])
        g = GeomGraph.from_edges(ps, [(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)])
        check = check_gabriel_triangulation(g)
        assert not check.ok
        assert "hull" in check.reason

    def test_structural_failures_are_reported_not_raised(self, unit_square):
        check = check_gabriel_triangulation(GeomGraph.complete(unit_square))
        assert not check.ok and "cross" in check.reason
        assert not is_gabriel_triangulation(GeomGraph(PointSet.from_points([(0, 0), (1, 0)])))

    def test_gabriel_triangulation_is_its_own_gabriel_graph(self):
        g = GeomGraph.complete(EQUILATERAL)
        assert is_gabriel_triangulation(g)
        assert gabriel_graph(g.points).edges == g.edges


class TestNecessity:
    def test_self_check(self):
        ps = gen_uniform(12, seed=4)
        assert necessity_check(ps, gabriel_graph(ps)) == []

    def test_complete_graph(self):
        ps = gen_uniform(8, seed=5)
        assert necessity_check(ps, GeomGraph.complete(ps)) == []

    def test_missing_edges_are_reported(self):
        assert necessity_check(EQUILATERAL, GeomGraph(EQUILATERAL)) == [(0, 1), (0, 2), (1, 2)]

    def test_point_set_mismatch(self, unit_square):
        with pytest.raises(GeometryError):
            necessity_check(EQUILATERAL, GeomGraph(unit_square))
