"""Exception hierarchy shared by every hallq module."""


class HallqError(Exception):
    """Base class for all library errors."""


class VerificationFailure(HallqError):
    """Raised when a checked identity fails; the CLI maps it to exit code 1."""


# scalar ring
class DivisionInexact(HallqError, ArithmeticError):
    pass


class DivisionByZero(HallqError, ZeroDivisionError):
    pass


class HalfPowerAtEvaluation(HallqError, ValueError):
    pass


class NegativeArgument(HallqError, ValueError):
    pass


# quivers
class NotDynkin(HallqError, ValueError):
    pass


class InvolutionInvalid(HallqError, ValueError):
    pass


class ExcludedType(HallqError, ValueError):
    pass


class DimensionMismatch(HallqError, ValueError):
    pass


# representations and counting
class ReflectionFailure(HallqError):
    pass


class RecognitionFailure(HallqError):
    pass


class TooLarge(HallqError):
    pass


class InterpolationUnstable(HallqError):
    pass


# algebra engines
class NonLaurentStructureConstant(HallqError):
    pass


class ContextMismatch(HallqError, TypeError):
    pass


class NotRhoSymmetric(HallqError, ValueError):
    pass


class GradingMismatch(HallqError, ValueError):
    pass


class NotIntegral(HallqError):
    pass


class SpanFailure(HallqError):
    pass


# verification outcomes
class RelationViolated(VerificationFailure):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class PropertyViolated(VerificationFailure):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class DiagramViolated(VerificationFailure):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotUnitriangular(VerificationFailure):
    pass


class ParityObstruction(VerificationFailure):
    pass
