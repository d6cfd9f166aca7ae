"""Exception hierarchy shared by every module."""


class EquichromeError(Exception):
    """Base class for all library errors."""


# graph construction
class EmptyLengths(EquichromeError, ValueError):
    pass


class NotSimple(EquichromeError, ValueError):
    pass


class BadParameter(EquichromeError, ValueError):
    pass


class MapVerificationFailed(EquichromeError):
    """A label map that should be an isomorphism is not one (a bug)."""


class TooLarge(EquichromeError, ValueError):
    pass


# coloring model
class PartialColoring(EquichromeError, ValueError):
    def __init__(self, missing):
        self.missing = list(missing)
        shown = ", ".join(str(v) for v in self.missing[:5])
        super().__init__(f"coloring misses {len(self.missing)} vertices: {shown}")


class ColorOutOfRange(EquichromeError, ValueError):
    pass


class BadListAssignment(EquichromeError, ValueError):
    pass


# reduction engine
class PreconditionFailed(EquichromeError):
    pass


class NoColorAvailable(EquichromeError):
    def __init__(self, index, vertex):
        self.index = index
        self.vertex = vertex
        super().__init__(f"no color left for x_{index} = {vertex}")


class NoSDR(EquichromeError):
    """The lists admit no system of distinct representatives."""


class SearchLimitExceeded(EquichromeError):
    pass


# solvers
class UnsupportedK(EquichromeError):
    pass


class UnsupportedShape(EquichromeError):
    pass


class InternalLemmaViolation(EquichromeError):
    """A step the proofs guarantee did not hold; always a bug."""


class BadEdgeIndices(EquichromeError, ValueError):
    pass


# verifier
class UnsupportedInstance(EquichromeError, ValueError):
    pass


class TooManyAssignments(EquichromeError):
    pass


class BudgetExceeded(EquichromeError):
    pass
