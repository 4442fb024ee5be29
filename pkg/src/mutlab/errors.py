"""Exception hierarchy shared by all mutlab modules."""


class MutlabError(Exception):
    """Base class; the CLI maps every subclass to an error JSON object."""

    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class InvalidQuiver(MutlabError):
    code = "invalid_quiver"


class InvalidVertex(MutlabError):
    code = "invalid_vertex"


class InvalidExtension(MutlabError):
    code = "invalid_extension"


class CapExceeded(MutlabError):
    """Raised when a mutation class grows past the requested cap."""

    code = "cap_exceeded"

    def __init__(self, cap, count, partial=None):
        super().__init__(f"mutation class exceeds cap {cap} (visited {count})")
        self.cap = cap
        self.count = count
        self.partial = partial


class NotDivisible(MutlabError):
    code = "not_divisible"


class NotLaurent(MutlabError):
    code = "not_laurent"


class ZeroDenominator(MutlabError):
    code = "zero_denominator"


class ParseError(MutlabError):
    code = "parse_error"


class PreconditionViolated(MutlabError):
    code = "precondition_violated"


class NotFlippable(MutlabError):
    code = "not_flippable"


class InvalidTriangulation(MutlabError):
    code = "invalid_triangulation"


class InvalidGenus(MutlabError):
    code = "invalid_genus"


class NotTwoRegular(MutlabError):
    code = "not_two_regular"


class StructureError(MutlabError):
    code = "structure_error"


class InvalidCorner(MutlabError):
    code = "invalid_corner"


class InvalidPoint(MutlabError):
    code = "invalid_point"


class InvalidSurface(MutlabError):
    code = "invalid_surface"
