"""Exception hierarchy shared by all modules."""


class HomclaveError(Exception):
    pass


class InputError(HomclaveError, ValueError):
    """Raised when an argument violates an operation's precondition."""


class LoopEdge(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


class InvalidParams(InputError):
    pass


class NotOdd(InputError):
    pass


class SizeMismatch(InputError):
    pass


class BipartiteComponent(InputError):
    pass


class NotAWalk(InputError):
    pass


class EndpointMismatch(InputError):
    pass


class NotClosed(InputError):
    pass


class EmptyClass(InputError):
    pass


class BaseMismatch(InputError):
    pass


class NotCyclicallyReduced(InputError):
    pass


class InvalidEdge(InputError):
    pass


class ParityMismatch(InputError):
    pass


class InvalidColoring(InputError):
    pass


class InvalidRange(InputError):
    pass


class IsolatedVertex(InputError):
    pass


class FiberNotConstant(InputError):
    pass


class ExtNonTrivial(InputError):
    pass


class UnsupportedCodomain(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class TheoryViolation(HomclaveError, RuntimeError):
    """A mathematically guaranteed invariant failed.

    On a valid input this indicates a bug; most often it means the supplied
    coloring was not actually a homomorphism.
    """


class NonIntegralWinding(TheoryViolation):
    pass


class OddWindingHalf(TheoryViolation):
    pass


class ParityClash(TheoryViolation):
    pass


class NotBipartiteAfterRemoval(TheoryViolation):
    pass


class RootMismatch(TheoryViolation):
    pass


class CannotRebase(TheoryViolation):
    pass


class ExtInconsistent(TheoryViolation):
    pass


class CascadeStuck(TheoryViolation):
    pass


class BudgetExceeded(HomclaveError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []
