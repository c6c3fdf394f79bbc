"""Moment <-> free cumulant conversion for a single variable.

With every argument equal, tau_pi and k_pi reduce to products of m_|V| and
k_|V| over the blocks of pi, so the lattice sums only depend on the
multiset of block sizes.  The reference path still walks all of NC(n);
the recursion path never touches the lattice.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import InsufficientMomentsError, SizeLimitError
from .nc import (
    NoncrossingPartition,
    enumerate_by_block_type,
    enumerate_nc,
    even_block_types,
    lattice_limit,
    mobius_to_top,
)
from .recurrence import moment_sequence
from .series import CumulantSequence, FormalSeries, GroupLike, MomentSequence

METHODS = ("auto", "lattice", "recursion")


def _product_over_blocks(sizes: Iterable[int], seq: Sequence[int], what: str) -> int:
    result = 1
    for s in sizes:
        if s > len(seq):
            raise InsufficientMomentsError(
                f"block of size {s} needs {what} of order {s}, only {len(seq)} given"
            )
        result *= seq[s - 1]
    return result


def _values(seq) -> tuple:
    if isinstance(seq, (MomentSequence, CumulantSequence)):
        return seq.values
    return tuple(seq)


def partition_moment(pi: NoncrossingPartition, m) -> int:
    """tau_pi for one variable: product of m_|V| over the blocks of pi."""
    return _product_over_blocks(pi.block_sizes(), _values(m), "moments")


def partition_cumulant(pi: NoncrossingPartition, k) -> int:
    return _product_over_blocks(pi.block_sizes(), _values(k), "cumulants")


def _fold(items: Sequence, fn: Callable[[Sequence], Counter], workers: int) -> Counter:
    """Apply ``fn`` to contiguous chunks and add the Counters in chunk order."""
    if workers <= 1 or len(items) < 2 * workers:
        return fn(items)
    step = -(-len(items) // workers)
    chunks = [items[i:i + step] for i in range(0, len(items), step)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(fn, chunks))
    total = Counter()
    for part in parts:
        total.update(part)
    return total


def _mobius_by_type(chunk) -> Counter:
    acc = Counter()
    for pi in chunk:
        acc[tuple(sorted(pi.block_sizes()))] += mobius_to_top(pi)
    return acc


def _count_by_type(chunk) -> Counter:
    return Counter(tuple(sorted(pi.block_sizes())) for pi in chunk)


@lru_cache(maxsize=None)
def _lattice_weights(n: int, workers: int, kind: str) -> tuple:
    # callers enforce the size limit
    lattice = enumerate_nc(n, limit=n)
    fn = _mobius_by_type if kind == "mobius" else _count_by_type
    return tuple(sorted(_fold(lattice, fn, workers).items()))


def _check_length(seq: tuple, L: int, what: str) -> None:
    if L < 1:
        raise ValueError("L must be >= 1")
    if len(seq) < L:
        raise InsufficientMomentsError(f"need {L} {what}, got {len(seq)}")


def moments_to_cumulants(
    m, L: int, limit: int | None = None, workers: int = 1
) -> CumulantSequence:
    """k_n = sum over NC(n) of tau_pi * mu(pi, 1_n), for n = 1..L.

    Raises SizeLimitError if L exceeds the lattice limit; use
    :func:`moments_to_cumulants_fast` there.
    """
    m = _values(m)
    _check_length(m, L, "moments")
    limit = lattice_limit() if limit is None else limit
    if L > limit:
        raise SizeLimitError(f"order {L} exceeds lattice limit {limit}; use the recursion path")
    out = []
    for n in range(1, L + 1):
        total = 0
        for sizes, weight in _lattice_weights(n, workers, "mobius"):
            total += weight * _product_over_blocks(sizes, m, "moments")
        out.append(total)
    return CumulantSequence(out)


def cumulants_to_moments(
    k, L: int, limit: int | None = None, workers: int = 1
) -> MomentSequence:
    """m_n = sum over NC(n) of k_pi, for n = 1..L."""
    k = _values(k)
    _check_length(k, L, "cumulants")
    limit = lattice_limit() if limit is None else limit
    if L > limit:
        raise SizeLimitError(f"order {L} exceeds lattice limit {limit}")
    out = []
    for n in range(1, L + 1):
        total = 0
        for sizes, count in _lattice_weights(n, workers, "count"):
            total += count * _product_over_blocks(sizes, k, "cumulants")
        out.append(total)
    return MomentSequence(out)


def moments_to_cumulants_fast(m, L: int) -> CumulantSequence:
    """Same result as :func:`moments_to_cumulants` without the lattice.

    Solves m_n = sum_{s=1}^{n} k_s [z^(n-s)] M(z)^s for k_n, where
    M(z) = 1 + m_1 z + m_2 z^2 + ...  O(L^3) integer operations.
    """
    m = _values(m)
    _check_length(m, L, "moments")
    base = (1,) + m[:L - 1]
    # powers[s][j] = [z^j] M(z)^s, truncated to degree L-1
    powers = [[1] + [0] * (L - 1)]
    for _ in range(L - 1):
        prev = powers[-1]
        nxt = [0] * L
        for i, a in enumerate(prev):
            if a:
                for j in range(L - i):
                    nxt[i + j] += a * base[j]
        powers.append(nxt)
    k = []
    for n in range(1, L + 1):
        value = m[n - 1]
        for s in range(1, n):
            value -= k[s - 1] * powers[s][n - s]
        k.append(value)
    return CumulantSequence(k)


def choose_method(max_order: int, limit: int | None = None) -> str:
    limit = lattice_limit() if limit is None else limit
    return "lattice" if max_order <= limit else "recursion"


def _even_block_sum(n: int, p0: Sequence[int], limit: int, workers: int) -> int:
    """alpha_n: sum over even block types and NC partitions of that type."""

    def chunk_sum(chunk) -> Counter:
        acc = Counter()
        for pi in chunk:
            acc["total"] += partition_moment(pi, p0) * mobius_to_top(pi)
        return acc

    total = 0
    for block_type in even_block_types(n):
        partitions = enumerate_by_block_type(n, block_type, limit=limit)
        total += _fold(partitions, chunk_sum, workers)["total"]
    return total


def r_transform_from_moments(
    moments,
    max_order: int,
    method: str = "auto",
    limit: int | None = None,
    workers: int = 1,
) -> FormalSeries:
    """R-transform coefficients of an even variable from its moments.

    ``method="lattice"`` sums tau_pi * mu(pi, 1_n) over even-block
    noncrossing partitions grouped by block type, and sets odd coefficients
    to zero; ``"recursion"`` runs :func:`moments_to_cumulants_fast`;
    ``"auto"`` picks the lattice when ``max_order`` is within the limit.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    moments = _values(moments)
    _check_length(moments, max_order, "moments")
    limit = lattice_limit() if limit is None else limit
    if method == "auto":
        method = choose_method(max_order, limit)
    if method == "recursion":
        return FormalSeries(moments_to_cumulants_fast(moments, max_order).values)
    if max_order > limit:
        raise SizeLimitError(f"order {max_order} exceeds lattice limit {limit}")
    coeffs = []
    for n in range(1, max_order + 1):
        coeffs.append(0 if n % 2 else _even_block_sum(n, moments, limit, workers))
    return FormalSeries(coeffs)


def r_transform_G(
    N: GroupLike,
    max_order: int,
    method: str = "auto",
    limit: int | None = None,
    workers: int = 1,
) -> FormalSeries:
    """R_G(z) up to ``max_order``, from the recurrence moments of G."""
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    return r_transform_from_moments(
        moment_sequence(N, max_order), max_order, method, limit, workers
    )
