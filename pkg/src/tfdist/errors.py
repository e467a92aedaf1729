"""Exception types raised across the package."""


class TFError(Exception):
    """Base class for all package errors."""


class InvalidParamsError(TFError, ValueError):
    """Generator or operation parameters outside their valid domain."""


class InvalidInputError(TFError, ValueError):
    """Input data violates a structural invariant (non-finite, wrong shape)."""


class UnsupportedError(TFError, ValueError):
    """Requested configuration is valid in principle but not supported."""


class GridMismatchError(TFError, ValueError):
    pass


class RealnessError(TFError, ArithmeticError):
    """Auto-Wigner imaginary residue exceeded the projection threshold."""


class FormatError(TFError, ValueError):
    """Malformed file on disk."""


class DegenerateProfileError(TFError, ValueError):
    pass
