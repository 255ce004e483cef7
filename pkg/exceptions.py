# exceptions.py


class LogharmonicError(Exception):
    """Root of every error raised by the toolkit."""


# --- Series Errors ---

class ZeroOrderError(LogharmonicError):
    """Raised when differentiating a series of order 0."""


class ZeroConstantTermError(LogharmonicError):
    """Raised when log/division needs a nonzero constant term."""


class CoefficientOverflowError(LogharmonicError):
    """Raised when a coefficient is non-finite or exceeds the overflow guard."""


# --- Mapping & Pre-Schwarzian Errors ---

class EvaluationFailureError(LogharmonicError):
    """Raised when a map cannot be evaluated at a probe point."""


class DegenerateDerivativeError(EvaluationFailureError):
    """Raised when a denominator (h', 1 + z h') vanishes at a requested point."""


class DilatationNotVanishingAtZeroError(LogharmonicError):
    """Raised when an origin-fixed construction receives a dilatation with omega(0) != 0."""


class OriginSingularityError(EvaluationFailureError):
    """Raised when a quantity is requested at z = 0 for an origin-fixed map."""


class DilatationOnBoundaryError(EvaluationFailureError):
    """Raised when |omega(z)| reaches 1 and the map stops being sense-preserving."""


# --- Search & Quadrature Errors ---

class AllPointsFailedError(LogharmonicError):
    """Raised when every probe of a supremum search failed."""


class QuadratureNonConvergenceError(LogharmonicError):
    """Raised when adaptive Simpson exhausts its depth without meeting the tolerance."""


# --- Starlikeness Errors ---

class OriginExcludedError(EvaluationFailureError):
    """Raised when Df/f is requested at z = 0."""


class NotNormalizedError(LogharmonicError):
    """Raised when h does not satisfy h'(0) = 1."""


class ZeroOnCircleError(LogharmonicError):
    """Raised when f vanishes on the circle used by the argument oracle."""


# --- Rendering Errors ---

class EmptyCurveSetError(LogharmonicError):
    """Raised when asked to emit a picture without curves."""


class IOFailureError(LogharmonicError):
    """Raised when an output file cannot be written."""


# --- CLI Errors ---

class InputError(LogharmonicError):
    """Raised for malformed manifests, unknown presets or bad flags."""


class BoundViolationError(LogharmonicError):
    """Raised when a numerically verified bound is exceeded."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}
