"""Exception types.  Every domain failure derives from :class:`ConeMetricError`."""


class ConeMetricError(Exception):
    """Base class for domain errors."""

    kind = "error"

    def to_json(self) -> dict:
        return {"error": self.kind, "message": str(self)}


class GluingError(ConeMetricError):
    kind = "gluing"


class GluingSyntaxError(GluingError):
    kind = "syntax"

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column

    def to_json(self):
        return {**super().to_json(), "line": self.line, "column": self.column}


class OutOfRange(GluingError):
    kind = "out_of_range"


class DuplicateSide(GluingError):
    kind = "duplicate_side"


class SelfGluedSide(GluingError):
    kind = "self_glued_side"


class UnpairedSide(GluingError):
    kind = "unpaired_side"


class NonSurfaceLink(GluingError):
    kind = "non_surface_link"


class Disconnected(GluingError):
    kind = "disconnected"


class LengthError(ConeMetricError):
    kind = "lengths"


class MissingEdge(LengthError):
    kind = "missing_edge"


class NonPositive(LengthError):
    kind = "non_positive"


class TriangleInequalityViolated(LengthError):
    kind = "triangle_inequality"

    def __init__(self, face, sides, lengths):
        self.face = face
        self.sides = sides
        a, b, c = lengths
        super().__init__(
            f"face {face}: sides {sides[0]} + {sides[1]} <= side {sides[2]}"
            f" ({a!r} + {b!r} <= {c!r})"
        )

    def to_json(self):
        return {**super().to_json(), "face": self.face, "sides": list(self.sides)}


class ConflictingLength(LengthError):
    kind = "conflicting_length"


class InvalidBarycentric(ConeMetricError, ValueError):
    kind = "invalid_barycentric"


class NotOnFace(ConeMetricError):
    kind = "not_on_face"


class StripDepthExceeded(ConeMetricError):
    """The unfolding search hit its depth cap with live strips left."""

    kind = "strip_depth_exceeded"


class ConvergenceNotReached(ConeMetricError):
    kind = "convergence_not_reached"

    def __init__(self, depth):
        super().__init__(f"partition certificate not reached within depth {depth}")
        self.depth = depth


class AssumptionViolated(ConeMetricError):
    kind = "assumption_violated"


class NonPositiveAngle(ConeMetricError):
    kind = "non_positive_angle"


class NonPositiveScale(ConeMetricError):
    kind = "non_positive_scale"


class TriangulationMismatch(ConeMetricError):
    kind = "triangulation_mismatch"
