import json

import pytest

from chordgraph.errors import DegenerateInputError, FormatError
from chordgraph.formats import (
    format_graph,
    format_points,
    parse_graph,
    parse_points,
    read_graph,
    read_points,
    write_graph,
    write_points,
)
from chordgraph.geometry import GeomGraph, PointSet


class TestPoints:
    def test_comments_and_blank_lines(self):
        ps = parse_points("# header\n\n0 0\n1.5 -2\n  # indented comment\n3e-1 4\n")
        assert ps.points == [(0.0, 0.0), (1.5, -2.0), (0.3, 4.0)]

    def test_wrong_field_count_names_the_line(self):
        with pytest.raises(FormatError) as info:
            parse_points("0 0\n1 2 3\n")
        assert info.value.line == 2
        assert str(info.value).startswith("line 2:")

    def test_unparseable_number(self):
        with pytest.raises(FormatError) as info:
            parse_points("# c\n0 zero\n")
        assert info.value.line == 2

    def test_non_finite(self):
        with pytest.raises(FormatError):
            parse_points("0 nan\n")

    def test_duplicates_name_both_lines(self, caplog):
        with pytest.raises(DegenerateInputError) as info:
            parse_points("# c\n0 0\n1 1\n0 0\n")
        assert "lines 2 and 4" in str(info.value)

    def test_exact_floats_survive(self, tmp_path):
        ps = PointSet.from_points([(0.1, 1 / 3), (2.0 ** -40, 12345.678901234)])
        target = tmp_path / "points.txt"
        write_points(ps, target, header="two points")
        assert read_points(target) == ps
        assert format_points(ps).count("\n") == 2


class TestGraphs:
    def test_canonical_form(self, square_path):
        text = format_graph(square_path)
        assert text == '{"points":[[0.0,0.0],[1.0,0.0],[1.0,1.0],[0.0,1.0]],"edges":[[0,1],[1,2],[2,3]]}\n'
        assert parse_graph(text) == square_path

    def test_file_round_trip(self, square_path, tmp_path):
        target = tmp_path / "graph.json"
        write_graph(square_path, target)
        assert read_graph(target) == square_path

    def test_unnormalized_edge(self):
        with pytest.raises(FormatError) as info:
            parse_graph(json.dumps({"points": [[0, 0], [1, 0]], "edges": [[1, 0]]}))
        assert "write it as [0, 1]" in str(info.value)

    def test_out_of_range_edge(self):
        with pytest.raises(FormatError):
            parse_graph(json.dumps({"points": [[0, 0], [1, 0]], "edges": [[0, 2]]}))

    def test_bad_json_names_the_line(self):
        with pytest.raises(FormatError) as info:
            parse_graph('{\n"points": [[0, 0],\n}')
        assert info.value.line == 3

    def test_missing_points(self):
        with pytest.raises(FormatError):
            parse_graph('{"edges": []}')

    def test_empty_edge_list(self, two_points):
        assert parse_graph(format_graph(GeomGraph(two_points))).edge_count == 0
