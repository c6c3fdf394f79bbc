"""Noncrossing partitions of {1, ..., n}.

Partitions are kept in canonical form (each block increasing, blocks sorted
by their minimum) and every enumerator yields them in lexicographic order of
that form, i.e. the order Python uses for tuples of tuples.

The Moebius function mu(pi, 1_n) has two implementations: a product of
signed Catalan numbers over the Kreweras complement (used everywhere), and
a table built from the defining recursion (kept as a cross-check).
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import (
    IncompatiblePartitionsError,
    InvalidPartitionError,
    ParityError,
    SizeLimitError,
    TypeSizeMismatchError,
)

DEFAULT_LATTICE_LIMIT = 12
RECURSIVE_MOBIUS_LIMIT = 8
LIMIT_ENV_VAR = "FREEGEN_LATTICE_LIMIT"


def lattice_limit() -> int:
    """Largest n for which NC(n) may be enumerated (env override allowed)."""
    raw = os.environ.get(LIMIT_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_LATTICE_LIMIT
    value = int(raw)
    if value < 1:
        raise ValueError(f"{LIMIT_ENV_VAR} must be a positive integer")
    return value


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    return comb(2 * n, n) // (n + 1)


def _labels(n: int, blocks: Sequence[Sequence[int]]) -> list[int]:
    """label[i] = index of the block holding i (index 0 unused)."""
    label = [-1] * (n + 1)
    for b_idx, block in enumerate(blocks):
        if not block:
            raise InvalidPartitionError("empty block")
        for x in block:
            if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= n:
                raise InvalidPartitionError(f"element {x!r} not in 1..{n}")
            if label[x] != -1:
                raise InvalidPartitionError(f"element {x} appears twice")
            label[x] = b_idx
    if any(lab == -1 for lab in label[1:]):
        missing = [i for i in range(1, n + 1) if label[i] == -1]
        raise InvalidPartitionError(f"elements {missing} not covered")
    return label


def _crosses(n: int, label: list[int]) -> bool:
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i in range(1, n + 1):
        first.setdefault(label[i], i)
        last[label[i]] = i
    stack = []
    for i in range(1, n + 1):
        b = label[i]
        if first[b] == i:
            stack.append(b)
        elif stack[-1] != b:
            return True
        if last[b] == i:
            stack.pop()
    return False


def is_noncrossing(blocks: Iterable[Iterable[int]], n: int | None = None) -> bool:
    """True iff ``blocks`` is a noncrossing set partition of {1..n}.

    ``n`` defaults to the total number of elements.  Raises
    InvalidPartitionError if the blocks do not partition {1..n}.
    """
    blocks = [list(b) for b in blocks]
    if n is None:
        n = sum(len(b) for b in blocks)
    return not _crosses(n, _labels(n, blocks))


@dataclass(frozen=True, order=True)
class NoncrossingPartition:
    """A noncrossing partition in canonical form.

    Ordering compares ``(n, blocks)``, which for a fixed n is the
    enumeration order.
    """

    n: int
    blocks: tuple

    def __post_init__(self):
        if self.n < 0:
            raise InvalidPartitionError("n must be >= 0")
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        label = _labels(self.n, blocks)
        if _crosses(self.n, label):
            raise InvalidPartitionError(f"blocks {blocks} are crossing")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def _trusted(cls, n: int, blocks: tuple) -> "NoncrossingPartition":
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "blocks", blocks)
        return obj

    @classmethod
    def top(cls, n: int) -> "NoncrossingPartition":
        """1_n, the single-block partition."""
        return cls._trusted(n, (tuple(range(1, n + 1)),) if n else ())

    @classmethod
    def bottom(cls, n: int) -> "NoncrossingPartition":
        """0_n, the partition into singletons."""
        return cls._trusted(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "NoncrossingPartition":
        """Inverse of ``str()``: ``"{1,2}{3,4}"``."""
        found = re.findall(r"\{([^{}]*)\}", text)
        if re.sub(r"\{[^{}]*\}", "", text).strip():
            raise InvalidPartitionError(f"cannot parse partition {text!r}")
        blocks = [tuple(int(x) for x in f.split(",")) for f in found]
        return cls(sum(len(b) for b in blocks), tuple(blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> tuple:
        return tuple(len(b) for b in self.blocks)

    def labels(self) -> list[int]:
        return _labels(self.n, self.blocks)

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


@dataclass(frozen=True)
class BlockTypeMultiset:
    """Multiset of even block sizes, stored in nondecreasing order."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted(self.parts))
        if not parts:
            raise ValueError("a block type needs at least one part")
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int) or p < 2 or p % 2:
                raise ParityError(f"block sizes must be positive even integers, got {p!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def even_block_types(n: int) -> list[BlockTypeMultiset]:
    """All multisets of even parts summing to n, in lexicographic order."""
    if n % 2:
        raise ParityError(f"n must be even, got {n}")

    def parts_from(remaining, smallest):
        if remaining == 0:
            yield ()
            return
        for p in range(smallest, remaining + 1, 2):
            for rest in parts_from(remaining - p, p):
                yield (p,) + rest

    return [BlockTypeMultiset(p) for p in parts_from(n, 2)]


def _first_blocks(m: int) -> Iterator[tuple]:
    """Subsets of {1..m} containing 1, in lexicographic order."""

    def extend(block):
        yield block
        for nxt in range(block[-1] + 1, m + 1):
            yield from extend(block + (nxt,))

    yield from extend((1,))


def _shift(partitions, offset):
    if offset == 0:
        return partitions
    return [tuple(tuple(x + offset for x in b) for b in p) for p in partitions]


@lru_cache(maxsize=None)
def _nc_blocks(m: int, sizes: frozenset | None) -> tuple:
    """Noncrossing partitions of {1..m} with block sizes in ``sizes``.

    The block of 1 splits the rest into gaps; every other block lies inside
    one gap, so the gaps are partitioned independently.
    """
    if m == 0:
        return ((),)
    out = []
    for first in _first_blocks(m):
        if sizes is not None and len(first) not in sizes:
            continue
        bounds = first + (m + 1,)
        gap_parts = []
        for a, b in zip(bounds, bounds[1:]):
            width = b - a - 1
            if width == 0:
                continue
            sub = _nc_blocks(width, sizes)
            if not sub:
                break
            gap_parts.append(_shift(sub, a))
        else:
            for combo in product(*gap_parts):
                out.append((first,) + tuple(b for part in combo for b in part))
    return tuple(out)


def _check_size(n: int, limit: int | None) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    limit = lattice_limit() if limit is None else limit
    if n > limit:
        raise SizeLimitError(f"size {n} exceeds lattice limit {limit}")


def enumerate_nc(n: int, limit: int | None = None) -> list[NoncrossingPartition]:
    """NC(n) in lexicographic order of canonical block form."""
    _check_size(n, limit)
    return [NoncrossingPartition._trusted(n, p) for p in _nc_blocks(n, None)]


def enumerate_even_nc(n: int, limit: int | None = None) -> list[NoncrossingPartition]:
    """Noncrossing partitions of {1..n} with every block of even size."""
    if n % 2:
        raise ParityError(f"n must be even, got {n}")
    _check_size(n, limit)
    sizes = frozenset(range(2, n + 1, 2))
    return [NoncrossingPartition._trusted(n, p) for p in _nc_blocks(n, sizes)]


def enumerate_by_block_type(
    n: int, block_type: BlockTypeMultiset | Iterable[int], limit: int | None = None
) -> list[NoncrossingPartition]:
    """Noncrossing partitions whose multiset of block sizes is ``block_type``."""
    if not isinstance(block_type, BlockTypeMultiset):
        block_type = BlockTypeMultiset(tuple(block_type))
    if block_type.total != n:
        raise TypeSizeMismatchError(
            f"block type {block_type} sums to {block_type.total}, not {n}"
        )
    _check_size(n, limit)
    wanted = block_type.parts
    return [
        NoncrossingPartition._trusted(n, p)
        for p in _nc_blocks(n, frozenset(wanted))
        if tuple(sorted(len(b) for b in p)) == wanted
    ]


def leq(pi: NoncrossingPartition, sigma: NoncrossingPartition) -> bool:
    """Refinement order: every block of pi lies inside a block of sigma."""
    if pi.n != sigma.n:
        raise IncompatiblePartitionsError(f"ground sets differ: {pi.n} vs {sigma.n}")
    label = sigma.labels()
    return all(label[x] == label[b[0]] for b in pi.blocks for x in b)


def _kreweras_cycles(pi: NoncrossingPartition) -> list[list[int]]:
    # K(pi) = pi^{-1} o gamma with gamma = (1 2 ... n) and blocks as
    # increasing cycles.
    n = pi.n
    prev = [0] * (n + 1)
    for b in pi.blocks:
        for i, x in enumerate(b):
            prev[x] = b[i - 1]
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = prev[x % n + 1]
        cycles.append(cycle)
    return cycles


def kreweras_complement(pi: NoncrossingPartition) -> NoncrossingPartition:
    """Kreweras complement, relabelled so that point i' becomes i."""
    blocks = tuple(sorted(tuple(sorted(c)) for c in _kreweras_cycles(pi)))
    return NoncrossingPartition._trusted(pi.n, blocks)


def mobius_to_top(pi: NoncrossingPartition) -> int:
    """mu(pi, 1_n) as a product of (-1)^(|V|-1) Catalan(|V|-1) over K(pi)."""
    result = 1
    for cycle in _kreweras_cycles(pi):
        size = len(cycle)
        if size > 1:
            result *= (-1) ** (size - 1) * catalan(size - 1)
    return result


@lru_cache(maxsize=None)
def _mobius_table(n: int) -> dict:
    lattice = enumerate_nc(n, limit=n)
    # Coarser partitions have fewer blocks, so this order visits every
    # strict upper bound of a partition before the partition itself.
    lattice.sort(key=len)
    labels = [p.labels() for p in lattice]
    mu: dict = {}
    done: list[int] = []
    for idx, p in enumerate(lattice):
        if len(p) == 1:
            value = 1
        else:
            value = 0
            for j in done:
                lab = labels[j]
                if len(lattice[j]) < len(p) and all(
                    lab[x] == lab[b[0]] for b in p.blocks for x in b
                ):
                    value -= mu[lattice[j].blocks]
        mu[p.blocks] = value
        done.append(idx)
    return mu


def mobius_recursive(pi: NoncrossingPartition, limit: int = RECURSIVE_MOBIUS_LIMIT) -> int:
    """mu(pi, 1_n) by solving sum_{pi <= sigma <= 1_n} mu(sigma, 1_n) = 0 top-down.

    Quadratic in |NC(n)|, so only small n are accepted.
    """
    if pi.n > limit:
        raise SizeLimitError(f"size {pi.n} exceeds recursive Moebius limit {limit}")
    if pi.n == 0:
        return 1
    return _mobius_table(pi.n)[pi.blocks]
