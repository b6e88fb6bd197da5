"""Exception hierarchy shared by all lpal modules."""


class LpalError(Exception):
    """Base class for every error raised by this package."""


class InvalidGraph(LpalError):
    pass


class InvalidInstance(LpalError):
    pass


class InvalidLine(LpalError):
    """A line is not a simple path in the graph it is checked against."""


class NotAStar(LpalError):
    pass


class NotATree(LpalError):
    pass


class NonzeroDfix(LpalError):
    """Raised by the polynomial solvers, which only handle dfix = 0."""


class UnequalBounds(LpalError):
    pass


class BoundTooSmall(LpalError):
    pass


class DegreeViolation(LpalError):
    pass


class InfeasibleInput(LpalError):
    pass


class Infeasible(LpalError):
    """No line concept within the search space meets the frequency bounds."""


class Timeout(LpalError):
    pass


class TooLarge(LpalError):
    pass


class NotDivisible(LpalError):
    pass


class BadPartition(LpalError):
    pass


class InvalidSolution(LpalError):
    pass


class CollisionDetected(LpalError):
    pass


class HypothesisViolated(LpalError):
    pass


class NotNice(LpalError):
    pass


class MethodMismatch(LpalError):
    pass


class ParseError(LpalError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
