"""Exception hierarchy shared by all modules."""


class FugledeError(ValueError):
    """Base class for every error raised by this package."""


class NotPrime(FugledeError):
    pass


class NoNonsquare(FugledeError):
    pass


class NotNonsquare(FugledeError):
    pass


class BudgetExceeded(FugledeError):
    """A search stopped before exhausting its space."""

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes


class SingularMatrix(FugledeError):
    pass


class DimensionMismatch(FugledeError):
    pass


class ZeroFrequency(FugledeError):
    pass


class AmbientMismatch(FugledeError):
    pass


class SizeProductMismatch(FugledeError):
    pass


class SizeMismatch(FugledeError):
    pass


class NoFourierZero(FugledeError):
    pass


class NotEquidistributed(FugledeError):
    pass


class InternalInconsistency(FugledeError):
    pass


class NotBalanced(FugledeError):
    pass


class NotDecomposable(FugledeError):
    pass


class UnsupportedPrime(FugledeError):
    pass


class WrongResidueClass(FugledeError):
    pass


class DimensionNotMultipleOfP(FugledeError):
    pass


class DocumentError(FugledeError):
    """Malformed JSON document; ``path`` locates the offending value."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class NotLogHadamard(FugledeError):
    pass
