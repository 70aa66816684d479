"""Exception types raised across the package."""


class LquProtectError(Exception):
    """Base class for all package errors."""


class NotHermitian(LquProtectError, ValueError):
    pass


class NotPSD(LquProtectError, ValueError):
    pass


class ConvergenceFailure(LquProtectError, RuntimeError):
    pass


class DimensionMismatch(LquProtectError, ValueError):
    pass


class InvalidDimension(LquProtectError, ValueError):
    pass


class UnsupportedDimension(LquProtectError, ValueError):
    pass


class InvalidSpectrum(LquProtectError, ValueError):
    pass


class ParamOutOfRange(LquProtectError, ValueError):
    pass


class ExcitationBudgetExceeded(ParamOutOfRange):
    """Raised when p1 + p2 > 1 for the three-level channel."""


class ZeroSuccessProbability(LquProtectError, ArithmeticError):
    pass


class ConfigParse(LquProtectError, ValueError):
    """Scenario file could not be parsed; message names the offending key."""
