"""Powers of G = X_1 in the sphere basis, via the product rules

    X_1 X_0 = X_1
    X_1 X_1 = X_2 + 2N X_0
    X_1 X_l = X_{l+1} + (2N-1) X_{l-1}      (l >= 2)

extended linearly.  The even/odd update rules for the p and q coefficients
are both just this one step applied to consecutive powers.
"""

from __future__ import annotations

import threading

from .series import (
    FormalSeries,
    GroupLike,
    MomentSequence,
    WordLengthExpansion,
    as_group,
)

_cache: dict[int, list[WordLengthExpansion]] = {}
_cache_lock = threading.Lock()


def multiply_by_generator(e: WordLengthExpansion, N: GroupLike) -> WordLengthExpansion:
    """Return G * e, an expansion of order ``e.order + 1``."""
    g = as_group(N)
    n = e.order
    dense = [0] * (n + 2)
    for length, c in e.items():
        if not c:
            continue
        dense[length + 1] += c
        if length == 1:
            dense[0] += g.degree * c
        elif length >= 2:
            dense[length - 1] += g.branching * c
    parity = (n + 1) % 2
    return WordLengthExpansion(n + 1, tuple(dense[parity::2]))


def _powers(g, n: int) -> list[WordLengthExpansion]:
    with _cache_lock:
        powers = _cache.setdefault(g.n_generators, [WordLengthExpansion.identity()])
        while len(powers) <= n:
            powers.append(multiply_by_generator(powers[-1], g))
        return powers


def expand_power(N: GroupLike, n: int) -> WordLengthExpansion:
    """Exact expansion of G^n.  Results are memoized per N."""
    if n < 0:
        raise ValueError("n must be >= 0")
    g = as_group(N)
    return _powers(g, n)[n]


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def moment(N: GroupLike, n: int) -> int:
    """tau(G^n): zero for odd n, otherwise the coefficient of e in G^n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n % 2:
        return 0
    return expand_power(N, n)[0]


def moment_series(N: GroupLike, max_order: int) -> FormalSeries:
    """M_G(z) truncated at ``max_order``; odd coefficients are zero."""
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    powers = _powers(as_group(N), max_order)
    return FormalSeries(powers[k][0] if k % 2 == 0 else 0 for k in range(1, max_order + 1))


def moment_sequence(N: GroupLike, length: int) -> MomentSequence:
    return MomentSequence(moment_series(N, length).coefficients)
