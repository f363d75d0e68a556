"""Exception hierarchy shared by all modules."""


class SemilatticeError(ValueError):
    """Base class for every error raised by slatdec."""


class ValidationError(SemilatticeError):
    """A join table violates one of the semilattice laws.

    ``elements`` holds the offending elements (a pair or a triple).
    """

    law = "semilattice"

    def __init__(self, elements, message=None):
        self.elements = tuple(elements)
        detail = message or f"fails at {self.elements}"
        super().__init__(f"{self.law} violation: {detail}")


class IndexOutOfRange(ValidationError):
    law = "range"


class IdempotenceViolation(ValidationError):
    law = "idempotence"


class CommutativityViolation(ValidationError):
    law = "commutativity"


class AssociativityViolation(ValidationError):
    law = "associativity"


class SizeOverflow(SemilatticeError):
    pass


class CapExceeded(SemilatticeError):
    pass


class NotAPartition(SemilatticeError):
    pass


class NotACongruence(SemilatticeError):
    pass


class NotComplementaryPair(SemilatticeError):
    pass


class NotSubsemilattice(SemilatticeError):
    pass


class NotADirectSum(SemilatticeError):
    pass


class InternalContradiction(SemilatticeError):
    """Raised when the phi relation is not functional on a verified direct sum."""


class UnknownAxiom(SemilatticeError):
    pass


class SlatSyntaxError(SemilatticeError):
    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class NoJoinExists(SemilatticeError):
    def __init__(self, x, y):
        self.elements = (x, y)
        super().__init__(f"elements {x} and {y} have no least upper bound")
