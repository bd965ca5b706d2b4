"""Exception types raised by the library."""


class ProjFactorError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(ProjFactorError):
    """Operands live in different ambient spaces."""


class FieldMismatchError(ProjFactorError):
    """Real and complex operands were mixed, or a complex value was forced real."""


class DependentBasisError(ProjFactorError):
    """A spanning list is rank deficient beyond the dependence tolerance."""


class ConvergenceError(ProjFactorError):
    """An iterative routine exhausted its iteration cap."""


class GradeError(ProjFactorError):
    """Blade grades are incompatible with the requested operation."""


class ZeroSubspaceError(ProjFactorError):
    """The operation is undefined for the zero subspace."""


class InputError(ProjFactorError):
    """An input document referenced an unknown name or an invalid object."""
