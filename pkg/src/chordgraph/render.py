"""SVG rendering of geometric graphs using drawsvg."""
from pathlib import Path
from typing import Optional, Union

import drawsvg as draw

from chordgraph.geometry import GeomGraph
from chordgraph.models import PathWitness

MARGIN = 0.05
EDGE_COLOR = "#555555"
POINT_COLOR = "#1f4e79"
WITNESS_COLOR = "#d62728"


def render_svg(g: GeomGraph, highlight: Optional[PathWitness] = None,
               path: Optional[Union[str, Path]] = None) -> str:
    """
    Points as circles, edges as lines and the highlighted witness on top. The y-axis points
    up as in the plane; the view box is the bounding box of the points plus a 5% margin.
    """
    xy = g.points.coords
    if len(xy):
        lo, hi = xy.min(axis=0), xy.max(axis=0)
        span = float(max(hi[0] - lo[0], hi[1] - lo[1])) or 1.0
        pad = MARGIN * span
        width, height = float(hi[0] - lo[0]) + 2 * pad, float(hi[1] - lo[1]) + 2 * pad
        d = draw.Drawing(width, height, origin=(float(lo[0]) - pad, -float(hi[1]) - pad))
    else:
        span = 1.0
        d = draw.Drawing(1, 1)

    stroke = span / 400.0
    for i, j in g.sorted_edges():
        d.append(draw.Line(xy[i, 0], -xy[i, 1], xy[j, 0], -xy[j, 1],
                           stroke=EDGE_COLOR, stroke_width=stroke, class_="edge"))
    if highlight is not None:
        for a, b in zip(highlight.vertices, highlight.vertices[1:]):
            d.append(draw.Line(xy[a, 0], -xy[a, 1], xy[b, 0], -xy[b, 1],
                               stroke=WITNESS_COLOR, stroke_width=3 * stroke, class_="witness"))
    for x, y in xy:
        d.append(draw.Circle(x, -y, span / 150.0, fill=POINT_COLOR, class_="point"))

    if path is not None:
        d.save_svg(str(path))
    return d.as_svg()
