"""Exception hierarchy shared by every module."""


class DgHopfError(Exception):
    """Base class for all library errors."""


class SpaceMismatch(DgHopfError):
    pass


class DegreeError(DgHopfError):
    pass


class WindowError(DgHopfError):
    pass


class WindowOverflow(DgHopfError):
    pass


class NoSolution(DgHopfError):
    pass


class NotABialgebra(DgHopfError):
    pass


class NotHopf(DgHopfError):
    pass


class NotConilpotent(DgHopfError):
    pass


class NotGroupElement(DgHopfError):
    pass


class NotTangential(DgHopfError):
    pass


class FlavorMismatch(DgHopfError):
    pass


class NotModuleMorphism(DgHopfError):
    pass


class NotAlgebraMorphism(DgHopfError):
    pass


class NotRepresentation(DgHopfError):
    pass


class ParseError(DgHopfError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ReferenceError_(DgHopfError):
    """Unknown name or basis label in a bundle file."""


class DimensionError(DgHopfError):
    pass


# public alias; the trailing underscore only avoids shadowing the builtin
ReferenceError = ReferenceError_
