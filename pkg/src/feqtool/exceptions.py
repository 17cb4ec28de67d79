"""Exception and warning types raised across feqtool."""


class FeqError(Exception):
    """Base class for every error raised by this package."""


class PoleError(FeqError, ValueError):
    """Argument lies within the guard distance of a pole."""


class DomainError(FeqError, ValueError):
    """Argument outside the domain of the function."""


class StripError(FeqError, ValueError):
    """Mellin argument outside a kernel's validity strip."""


class UnsupportedPrimitiveError(FeqError, TypeError):
    pass


class CharacterNotFoundError(FeqError, LookupError):
    pass


class AmbiguousCharacterError(FeqError, LookupError):
    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class QuadratureError(FeqError, ArithmeticError):
    """Successive refinement levels failed to contract."""


class SeriesTruncationError(FeqError, ArithmeticError):
    pass


class InsufficientCoefficientsError(FeqError, ValueError):
    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class ConvergenceRegionError(FeqError, ValueError):
    pass


class UnsupportedSeriesError(FeqError, ValueError):
    pass


class SizeError(FeqError, ValueError):
    pass


class DegenerateFitError(FeqError, ValueError):
    pass


class UnknownCaseError(FeqError, KeyError):
    pass


class AccuracyWarning(UserWarning):
    """Quadrature finished without reaching the requested tolerance."""
