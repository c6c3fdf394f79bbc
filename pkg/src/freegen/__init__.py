"""Exact moments and R-transform of G = g_1 + ... + g_N + g_1^-1 + ... + g_N^-1."""

from .cumulants import (
    cumulants_to_moments,
    moments_to_cumulants,
    moments_to_cumulants_fast,
    partition_cumulant,
    partition_moment,
    r_transform_from_moments,
    r_transform_G,
)
from .errors import (
    FreegenError,
    IncompatiblePartitionsError,
    InsufficientMomentsError,
    InvalidPartitionError,
    OracleBudgetError,
    OrderNotComputedError,
    ParityError,
    SizeLimitError,
    TypeSizeMismatchError,
)
from .nc import (
    BlockTypeMultiset,
    NoncrossingPartition,
    catalan,
    enumerate_by_block_type,
    enumerate_even_nc,
    enumerate_nc,
    is_noncrossing,
    kreweras_complement,
    leq,
    mobius_recursive,
    mobius_to_top,
)
from .oracle import Letter, ReducedWord, closed_walk_count, exhaustive_expansion, reduce_word
from .recurrence import expand_power, moment, moment_sequence, moment_series, multiply_by_generator
from .series import (
    CumulantSequence,
    FormalSeries,
    GroupParameter,
    MomentSequence,
    WordLengthExpansion,
    mass_check,
    series_coefficient,
    sphere_size,
)

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memoized power, enumeration and lattice table."""
    from . import cumulants, nc, recurrence

    recurrence.clear_cache()
    nc._nc_blocks.cache_clear()
    nc._mobius_table.cache_clear()
    cumulants._lattice_weights.cache_clear()
