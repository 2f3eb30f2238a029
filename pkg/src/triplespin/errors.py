"""Exception types shared across the package."""


class TripleSpinError(ValueError):
    """Base class for all validation errors raised by this package."""


class TrivialRepresentationError(TripleSpinError):
    """Spin operators requested for the one-dimensional (twice_s = 0) case."""


class DimensionMismatchError(TripleSpinError):
    """Operands have incompatible matrix dimensions."""


class NotHermitianError(TripleSpinError):
    """A matrix expected to be Hermitian is not, beyond tolerance."""


class InvalidStateError(TripleSpinError):
    """A density matrix violates Hermiticity, unit trace, or positivity."""


class SpinRestrictionError(TripleSpinError):
    """A relation proved only for spin-1/2 was requested for higher spin."""
