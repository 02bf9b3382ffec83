"""
Point files: '#' comment lines and one "x y" pair per line.
Graph files: canonical JSON {"points": [[x, y], ...], "edges": [[i, j], ...]} with i < j.
"""
import json
import math
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import ValidationError

from chordgraph import logger
from chordgraph.errors import DegenerateInputError, FormatError
from chordgraph.geometry import GeomGraph, PointSet
from chordgraph.models import GraphDocument

PathLike = Union[str, Path]


def parse_points(text: str) -> PointSet:
    coords: List[Tuple[float, float]] = []
    line_numbers: List[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise FormatError(f"expected two numbers, found {len(fields)} fields", number)
        try:
            x, y = float(fields[0]), float(fields[1])
        except ValueError:
            raise FormatError(f"cannot parse {line!r} as two numbers", number)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise FormatError("coordinates must be finite", number)
        coords.append((x, y))
        line_numbers.append(number)
    try:
        return PointSet.from_points(coords)
    except DegenerateInputError as e:
        if e.pair is None:
            raise
        first, second = (line_numbers[k] for k in e.pair)
        logger.warning(f"Duplicate points on lines {first} and {second}")
        raise DegenerateInputError(f"duplicate points on lines {first} and {second}", e.pair)


def format_points(ps: PointSet, header: Optional[str] = None) -> str:
    lines = [f"# {row}" for row in header.splitlines()] if header else []
    lines += [f"{float(x)!r} {float(y)!r}" for x, y in ps]
    return "\n".join(lines) + "\n"


def read_points(path: PathLike) -> PointSet:
    return parse_points(Path(path).read_text(encoding="utf-8"))


def write_points(ps: PointSet, path: PathLike, header: Optional[str] = None) -> None:
    Path(path).write_text(format_points(ps, header), encoding="utf-8")


def parse_graph(text: str) -> GeomGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", e.lineno)
    if not isinstance(data, dict) or "points" not in data:
        raise FormatError("expected an object with 'points' and 'edges'")
    try:
        document = GraphDocument.model_validate(data)
    except ValidationError as e:
        problems = "; ".join(error["msg"] for error in e.errors())
        raise FormatError(f"invalid graph document: {problems}")
    return document.to_graph()


def format_graph(g: GeomGraph) -> str:
    return GraphDocument.from_graph(g).canonical_json() + "\n"


def read_graph(path: PathLike) -> GeomGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: GeomGraph, path: PathLike) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")
