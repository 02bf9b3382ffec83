from typing import Optional, Tuple


class GeometryError(ValueError):
    """Base class for invalid geometric input"""


class DegenerateInputError(GeometryError):
    """Duplicate points, repeated path vertices, or ties that general position forbids"""

    def __init__(self, message: str, pair: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


class NotConvexError(GeometryError):
    pass


class NotOneSidedError(GeometryError):
    pass


class FaceExtractionError(GeometryError):
    """A graph whose faces cannot be read as a triangulation"""


class CrossingEdgesError(FaceExtractionError):
    pass


class DisconnectedGraphError(FaceExtractionError):
    pass


class NonTriangularFaceError(FaceExtractionError):
    pass


class SearchLimitError(GeometryError):
    pass


class PathNotInGraphError(GeometryError):
    pass


class PartitionError(RuntimeError):
    """No balanced direction was found; the sweep itself is wrong"""


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
