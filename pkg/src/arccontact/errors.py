"""Exception hierarchy.

Every mathematical-domain failure derives from :class:`DomainError`; the CLI
maps those to exit status 2 and reports the class name.
"""


class ArcContactError(Exception):
    pass


class DomainError(ArcContactError):
    @property
    def name(self) -> str:
        return type(self).__name__


class VariableMismatch(ArcContactError, ValueError):
    pass


class DivisionByNonUnit(DomainError, ZeroDivisionError):
    pass


class PrecisionExhausted(DomainError):
    pass


class ArcNotOnVariety(DomainError):
    pass


class ArcInMaxMult(DomainError):
    pass


class ElimNotSeparated(DomainError):
    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class NonExactStrictTransform(DomainError):
    pass


class MaxStepsExceeded(DomainError):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class NoMonomialSolution(DomainError):
    pass


class WitnessRejected(DomainError):
    pass


class InvalidArc(ArcContactError, ValueError):
    pass
