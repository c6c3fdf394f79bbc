"""Exception types raised by freegen."""


class FreegenError(Exception):
    pass


class OrderNotComputedError(FreegenError, IndexError):
    """Requested a coefficient beyond the computed range."""


class InvalidPartitionError(FreegenError, ValueError):
    pass


class IncompatiblePartitionsError(FreegenError, ValueError):
    pass


class ParityError(FreegenError, ValueError):
    pass


class TypeSizeMismatchError(FreegenError, ValueError):
    """Block type does not sum to the ground-set size."""


class InsufficientMomentsError(FreegenError, ValueError):
    pass


class SizeLimitError(FreegenError):
    """Lattice enumeration requested beyond the configured size limit."""


class OracleBudgetError(FreegenError):
    """Brute-force oracle would exceed its work budget."""
