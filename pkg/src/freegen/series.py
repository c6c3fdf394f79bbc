"""Exact integer containers shared by every other module.

Everything here is immutable and works on plain Python ints, so all
comparisons downstream are equality tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import OrderNotComputedError


@dataclass(frozen=True)
class GroupParameter:
    """Number of free generators of F_N."""

    n_generators: int

    def __post_init__(self):
        if isinstance(self.n_generators, bool) or not isinstance(self.n_generators, int):
            raise TypeError("n_generators must be an int")
        if self.n_generators < 1:
            raise ValueError(f"n_generators must be >= 1, got {self.n_generators}")

    @property
    def degree(self) -> int:
        """2N: number of letters, i.e. the valence of the Cayley tree."""
        return 2 * self.n_generators

    @property
    def branching(self) -> int:
        """2N - 1: number of ways to extend a nonempty reduced word."""
        return 2 * self.n_generators - 1


GroupLike = Union[GroupParameter, int]


def as_group(N: GroupLike) -> GroupParameter:
    if isinstance(N, GroupParameter):
        return N
    return GroupParameter(N)


def sphere_size(N: GroupLike, length: int) -> int:
    """Number of reduced words of the given length in F_N."""
    g = as_group(N)
    if length < 0:
        raise ValueError("length must be >= 0")
    if length == 0:
        return 1
    return g.degree * g.branching ** (length - 1)


@dataclass(frozen=True)
class WordLengthExpansion:
    """Coefficients of G^order in the sphere basis X_0 = e, X_1, X_2, ...

    Only lengths with the parity of ``order`` are stored: ``packed[j]`` is
    the coefficient of X_{order % 2 + 2 j}.  Use :meth:`from_mapping` to
    build one from a sparse ``{length: coefficient}`` dict.
    """

    order: int
    packed: tuple

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if len(self.packed) != self.order // 2 + 1:
            raise ValueError(
                f"expected {self.order // 2 + 1} packed coefficients for order "
                f"{self.order}, got {len(self.packed)}"
            )
        for c in self.packed:
            if not isinstance(c, int):
                raise TypeError("coefficients must be ints")
            if c < 0:
                raise ValueError("coefficients must be nonnegative")

    @classmethod
    def from_mapping(cls, order: int, mapping: Mapping[int, int]) -> "WordLengthExpansion":
        parity = order % 2
        packed = [0] * (order // 2 + 1)
        for length, c in mapping.items():
            length = int(length)
            if c == 0:
                continue
            if length < 0 or length > order:
                raise ValueError(f"length {length} outside 0..{order}")
            if length % 2 != parity:
                raise ValueError(f"length {length} has the wrong parity for order {order}")
            packed[(length - parity) // 2] = int(c)
        return cls(order, tuple(packed))

    @classmethod
    def identity(cls) -> "WordLengthExpansion":
        return cls(0, (1,))

    def lengths(self) -> range:
        return range(self.order % 2, self.order + 1, 2)

    def __getitem__(self, length: int) -> int:
        if length < 0 or length > self.order or length % 2 != self.order % 2:
            return 0
        return self.packed[length // 2]

    def items(self) -> Iterator[tuple[int, int]]:
        return zip(self.lengths(), self.packed)

    def to_dict(self) -> dict[int, int]:
        """Sparse ``{length: coefficient}`` view, zeros dropped."""
        return {length: c for length, c in self.items() if c}

    def mass(self, N: GroupLike) -> int:
        return sum(c * sphere_size(N, length) for length, c in self.items())


def mass_check(e: WordLengthExpansion, N: GroupLike) -> bool:
    """True iff the expansion accounts for all (2N)^order letter sequences."""
    return e.mass(N) == as_group(N).degree ** e.order


def invariant_violations(e: WordLengthExpansion, N: GroupLike) -> list[str]:
    """Human-readable list of broken expansion invariants (empty if sound).

    Parity, bound and nonnegativity are enforced at construction; this
    adds the leading-term and mass-conservation checks.
    """
    problems = []
    if e[e.order] != 1:
        problems.append(f"leading coefficient at length {e.order} is {e[e.order]}, not 1")
    if not mass_check(e, N):
        problems.append(
            f"mass {e.mass(N)} != (2N)^n = {as_group(N).degree ** e.order}"
        )
    return problems


class _IntSequence:
    """1-indexed immutable integer sequence x_1..x_L."""

    __slots__ = ("_values",)

    def __init__(self, values: Iterable[int]):
        vals = tuple(values)
        for v in vals:
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"values must be ints, got {type(v).__name__}")
        object.__setattr__(self, "_values", vals)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def values(self) -> tuple:
        return self._values

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= len(self._values):
            raise OrderNotComputedError(f"index {n} outside 1..{len(self._values)}")
        return self._values[n - 1]

    def __iter__(self):
        return iter(self._values)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._values == other._values

    def __hash__(self):
        return hash((type(self).__name__, self._values))

    def __repr__(self):
        return f"{type(self).__name__}({list(self._values)})"


class MomentSequence(_IntSequence):
    """Moments m_1, ..., m_L of a single variable."""


class CumulantSequence(_IntSequence):
    """Free cumulants k_1, ..., k_L of a single variable."""


class FormalSeries:
    """Truncated one-variable power series sum_{k>=1} a_k z^k, no constant term.

    Two series compare equal when they agree on the indices both have
    computed, so a short series equals any longer extension of itself.
    """

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Iterable[int]):
        coeffs = tuple(coefficients)
        if not coeffs:
            raise ValueError("a series needs at least one computed coefficient")
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError("coefficients must be ints")
        object.__setattr__(self, "_coefficients", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("FormalSeries is immutable")

    @property
    def coefficients(self) -> tuple:
        """(a_1, ..., a_max_order)"""
        return self._coefficients

    @property
    def max_order(self) -> int:
        return len(self._coefficients)

    def coefficient(self, k: int) -> int:
        if not 1 <= k <= self.max_order:
            raise OrderNotComputedError(
                f"order {k} not computed (series has orders 1..{self.max_order})"
            )
        return self._coefficients[k - 1]

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        common = min(self.max_order, other.max_order)
        return self._coefficients[:common] == other._coefficients[:common]

    __hash__ = None

    def __repr__(self):
        return f"FormalSeries({list(self._coefficients)})"


def series_coefficient(s: FormalSeries, k: int) -> int:
    return s.coefficient(k)
