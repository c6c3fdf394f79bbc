"""Direct free-group computations used to check the recurrence engine.

Nothing here imports the recurrence.  Two independent mechanisms:

* exhaustive expansion: track how many length-n letter sequences reduce to
  each individual reduced word, then read off the per-length count;
* closed walk count: weighted height profiles (Dyck paths) of walks that
  return to the root of the 2N-regular tree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import OracleBudgetError
from .series import GroupLike, WordLengthExpansion, as_group, sphere_size

DEFAULT_ORACLE_BUDGET = 50_000_000


@dataclass(frozen=True)
class Letter:
    """g_index or its inverse, depending on ``sign``."""

    index: int
    sign: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    def __str__(self):
        return f"g{self.index}" if self.sign > 0 else f"g{self.index}^-1"


class ReducedWord(tuple):
    """Tuple of letters with no adjacent ``x, x^-1`` pair."""

    def __new__(cls, letters: Iterable[Letter] = ()):
        word = super().__new__(cls, letters)
        for a, b in zip(word, word[1:]):
            if a.index == b.index and a.sign == -b.sign:
                raise ValueError(f"word is not reduced at {a}{b}")
        return word

    def __str__(self):
        return " ".join(map(str, self)) or "e"


def reduce_word(letters: Iterable[Letter]) -> ReducedWord:
    """Free reduction by cancelling adjacent inverse pairs with a stack."""
    stack: list[Letter] = []
    for x in letters:
        if stack and stack[-1].index == x.index and stack[-1].sign == -x.sign:
            stack.pop()
        else:
            stack.append(x)
    return ReducedWord(stack)


def alphabet(N: GroupLike) -> list[Letter]:
    """The 2N letters, ordered g1, g1^-1, g2, g2^-1, ..."""
    g = as_group(N)
    return [Letter(i, s) for i in range(1, g.n_generators + 1) for s in (1, -1)]


# Reduced words of length l >= 1 are numbered 0 .. sphere_size - 1: the first
# letter contributes a digit in [0, 2N), every later letter a digit in
# [0, 2N-1) chosen among the letters other than the inverse of its
# predecessor.  Deleting the last letter is then ``idx // (2N-1)``.

def word_index(N: GroupLike, word: Sequence[Letter]) -> int:
    g = as_group(N)
    letters = alphabet(g)
    pos = {x: i for i, x in enumerate(letters)}
    if not word:
        return 0
    idx = pos[word[0]]
    for prev, cur in zip(word, word[1:]):
        forbidden = pos[prev] ^ 1
        digit = pos[cur]
        if digit == forbidden:
            raise ValueError("word is not reduced")
        idx = idx * g.branching + (digit if digit < forbidden else digit - 1)
    return idx


def word_at(N: GroupLike, length: int, idx: int) -> ReducedWord:
    """Inverse of :func:`word_index`."""
    g = as_group(N)
    letters = alphabet(g)
    if not 0 <= idx < sphere_size(g, length):
        raise ValueError(f"index {idx} out of range for length {length}")
    digits = []
    for _ in range(length - 1):
        idx, d = divmod(idx, g.branching)
        digits.append(d)
    word = [idx]
    for d in reversed(digits):
        forbidden = word[-1] ^ 1
        word.append(d if d < forbidden else d + 1)
    return ReducedWord(letters[i] for i in word) if length else ReducedWord()


def _tally(per_word: dict[int, np.ndarray], n: int, degree: int) -> WordLengthExpansion:
    """Collapse per-word counts to per-length counts, checking uniformity."""
    mapping = {}
    total = 0
    for length, arr in per_word.items():
        lo, hi = arr.min(), arr.max()
        if lo != hi:
            raise AssertionError(
                f"reduced words of length {length} received different counts ({lo}..{hi})"
            )
        total += int(arr.sum())
        mapping[length] = int(lo)
    if total != degree ** n:
        raise AssertionError(f"counted {total} sequences, expected {degree ** n}")
    return WordLengthExpansion.from_mapping(n, mapping)


def exhaustive_expansion(
    N: GroupLike, n: int, budget: int = DEFAULT_ORACLE_BUDGET
) -> WordLengthExpansion:
    """G^n computed in the group algebra, one counter per reduced word.

    Starting from e, multiply on the right by each of the 2N letters, n
    times.  ``budget`` caps the number of reduced words tracked at once.
    Raises AssertionError if two reduced words of the same length end up
    with different counts.
    """
    g = as_group(N)
    if n < 0:
        raise ValueError("n must be >= 0")
    states = sum(sphere_size(g, length) for length in range(n % 2, n + 1, 2))
    if states > budget:
        raise OracleBudgetError(f"{states} reduced words to track exceeds budget {budget}")
    dtype = np.int64 if g.degree ** n < 2**62 else object
    br = g.branching
    per_word = {0: np.ones(1, dtype=dtype)}
    for _ in range(n):
        nxt: dict[int, np.ndarray] = {}

        def add(length, arr):
            if length in nxt:
                nxt[length] = nxt[length] + arr
            else:
                nxt[length] = arr

        for length, arr in per_word.items():
            if length == 0:
                # e * x = x for every letter
                add(1, np.repeat(arr, g.degree))
                continue
            # the 2N-1 letters that do not cancel the last one
            add(length + 1, np.repeat(arr, br))
            # the one letter that cancels it
            if length == 1:
                add(0, arr.sum(keepdims=True))
            else:
                add(length - 1, arr.reshape(-1, br).sum(axis=1))
        per_word = nxt
    return _tally(per_word, n, g.degree)


def brute_force_expansion(
    N: GroupLike, n: int, budget: int = 2_000_000
) -> WordLengthExpansion:
    """G^n by reducing every one of the (2N)^n letter sequences."""
    g = as_group(N)
    if g.degree ** n > budget:
        raise OracleBudgetError(f"(2N)^n = {g.degree ** n} exceeds budget {budget}")
    counts = Counter(reduce_word(seq) for seq in product(alphabet(g), repeat=n))
    per_word: dict[int, list[int]] = {}
    for word, c in counts.items():
        per_word.setdefault(len(word), []).append(c)
    for length, cs in per_word.items():
        if len(cs) != sphere_size(g, length):
            raise AssertionError(f"only {len(cs)} words of length {length} were reached")
    return _tally({k: np.array(v, dtype=object) for k, v in per_word.items()}, n, g.degree)


def closed_walk_count(N: GroupLike, n: int) -> int:
    """Number of length-n closed walks at the root of the 2N-regular tree.

    Sums weighted Dyck paths: an up-step leaving height 0 has weight 2N,
    one leaving a positive height weight 2N-1, and down-steps weight 1.
    """
    g = as_group(N)
    if n < 0 or n % 2:
        raise ValueError(f"n must be even and >= 0, got {n}")
    ways = [1]  # ways[h]: weighted paths ending at height h
    for step in range(n):
        remaining = n - step - 1
        top = min(len(ways), remaining)
        nxt = [0] * (top + 1)
        for h, w in enumerate(ways):
            if not w:
                continue
            if h + 1 <= top:
                nxt[h + 1] += w * (g.degree if h == 0 else g.branching)
            if h >= 1 and h - 1 <= top:
                nxt[h - 1] += w
        ways = nxt
    return ways[0]
