"""Exception hierarchy shared by all topocalc modules."""


class TopologyError(ValueError):
    """Base class for every error raised by topocalc."""


class ValidationError(TopologyError):
    """Malformed input: duplicate vertices, missing faces, bad shapes, ..."""


class MonotonicityError(ValidationError):
    """A face was assigned a larger filtration value than one of its cofaces."""

    def __init__(self, face, coface, face_value, coface_value):
        self.face = face
        self.coface = coface
        super().__init__(
            f"face {tuple(face)} has value {face_value} > "
            f"{coface_value} of its coface {tuple(coface)}"
        )


class DegenerateInputError(ValidationError):
    """Geometric input in a configuration the builder cannot triangulate."""


class CapabilityError(TopologyError):
    """The request is valid but beyond what this implementation supports."""


class NotMorseFunctionError(ValidationError):
    """A cell function violates one of the discrete Morse conditions."""

    def __init__(self, cell, offenders, kind):
        self.cell = cell
        self.offenders = list(offenders)
        self.kind = kind
        names = ", ".join(str(tuple(c)) for c in self.offenders)
        super().__init__(f"cell {tuple(cell)} has more than one {kind} violating "
                         f"the discrete Morse condition: {names}")


class DisconnectedError(ValidationError):
    """The 1-skeleton is not connected."""

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"complex is disconnected: vertex {vertex} is unreachable from the root")
