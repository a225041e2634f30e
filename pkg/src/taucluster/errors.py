"""Exception types shared across the package."""


class TauClusterError(Exception):
    """Base class for all library errors."""


class InputError(TauClusterError, ValueError):
    """Malformed or inadmissible input (bad JSON, invalid presentation, failed precondition)."""


class SplitBasicError(TauClusterError):
    """An endomorphism ring modulo its radical is larger than the ground field."""


class CapOverflowError(TauClusterError):
    """An enumeration exceeded its configured safety cap."""


class VerificationError(TauClusterError):
    """A checked identity failed on concrete data."""
