"""Exception hierarchy shared by all modules."""


class OdetkError(Exception):
    """Base class for every error raised by the toolkit."""


class ZeroDenominator(OdetkError, ZeroDivisionError):
    pass


class PoleTooDeep(OdetkError, ValueError):
    pass


class DivisionByZeroOperator(OdetkError, ZeroDivisionError):
    pass


class SingularGauge(OdetkError, ValueError):
    pass


class UnsupportedInput(OdetkError):
    """Input is valid but outside what the exact-over-Q machinery handles."""


class UnsupportedIrrationalSingularity(UnsupportedInput):
    def __init__(self, factor, message=None):
        self.factor = factor
        super().__init__(message or f"singular points at the roots of {factor} are not rational")


class IrregularPoint(UnsupportedInput):
    pass


class NonFuchsian(UnsupportedInput):
    pass


class InconsistentCertificate(OdetkError, ValueError):
    pass


class DegeneratePade(OdetkError, ArithmeticError):
    pass


class PoleOnRay(OdetkError, ValueError):
    pass


class SectorViolation(OdetkError, ValueError):
    pass


class ParseError(OdetkError, ValueError):
    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")
