"""Exception hierarchy shared by every module of the package."""


class HnsError(Exception):
    """Base class for all errors raised by hnsexp."""


class InvalidDimensionError(HnsError, ValueError):
    pass


class TableError(HnsError, ValueError):
    """A structure-constant table violates its invariants."""


class NoUnitError(HnsError):
    pass


class SystemMismatchError(HnsError, ValueError):
    pass


class WrongSystemError(HnsError, ValueError):
    """A method restricted to one algebra was called on another."""


class SpectralPairingError(HnsError):
    pass


class ClassificationError(HnsError):
    pass


class NonConvergenceError(HnsError):
    pass


class DegenerateSpectrumError(HnsError):
    """The associated matrix is defective or its mode matrix is ill-conditioned."""


class ConsistencyError(HnsError):
    pass


class CatalogError(HnsError):
    pass


class CatalogParseError(CatalogError):
    pass


class CatalogValidationError(CatalogError):
    pass


class NotFoundError(CatalogError, LookupError):
    pass
