"""Exception hierarchy shared by all modules."""


class StrongRingError(Exception):
    """Base class for every error raised by this package."""


class ClosureViolation(StrongRingError, ValueError):
    def __init__(self, missing, parent):
        self.missing = tuple(missing)
        self.parent = tuple(parent)
        super().__init__(
            f"set {set(self.parent)} is present but its subset {set(self.missing)} is missing"
        )


class EmptySetMember(StrongRingError, ValueError):
    def __init__(self):
        super().__init__("the empty set cannot be a member of a simplicial complex")


class BadParameter(StrongRingError, ValueError):
    pass


class ExpressionSyntaxError(StrongRingError, SyntaxError):
    """Parse failure; ``position`` is a 0-based character offset into the text."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text_source = text
        super().__init__(f"{message} at offset {position}")


class UnknownGenerator(StrongRingError, ValueError):
    pass


class NotASingleTerm(StrongRingError, ValueError):
    pass


class EmptyTerm(StrongRingError, ValueError):
    pass


class VertexOutOfRange(StrongRingError, IndexError):
    pass


class ValueInRange(StrongRingError, ValueError):
    pass


class NotSquare(StrongRingError, ValueError):
    pass


class NotUnimodular(StrongRingError, ValueError):
    def __init__(self, det: int):
        self.det = det
        super().__init__(f"matrix is not unimodular (det={det})")


class NotAnAutomorphism(StrongRingError, ValueError):
    pass


class BadOrder(StrongRingError, ValueError):
    pass


class TooLarge(StrongRingError, ValueError):
    """A size cap was exceeded; the CLI maps this to exit code 3."""


class TooLargeForExact(TooLarge):
    pass


class NotLocallyInjective(StrongRingError, ValueError):
    pass


class NotSymmetric(StrongRingError, ValueError):
    pass


class BadSignature(StrongRingError, ValueError):
    pass


class StepTooLarge(StrongRingError, RuntimeError):
    pass


class ContractionBoundViolated(StrongRingError, ValueError):
    pass


class NoConvergence(StrongRingError, RuntimeError):
    pass


class UnknownSuite(StrongRingError, ValueError):
    pass
