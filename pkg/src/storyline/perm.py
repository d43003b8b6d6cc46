"""Permutation arithmetic over vertical orderings of character curves.

An ordering lists character indices top to bottom. The distance between two
orderings is the number of character pairs whose relative order differs
(Kendall tau / inversion distance), which is also the minimum number of
adjacent swaps, i.e. curve crossings, needed to turn one into the other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Ordering:
    """A permutation of ``0..k-1``; ``positions[rank]`` is the character at ``rank``."""

    positions: tuple[int, ...]
    inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        positions = tuple(self.positions)
        k = len(positions)
        inverse = [-1] * k
        for rank, char in enumerate(positions):
            if not 0 <= char < k or inverse[char] != -1:
                raise ValueError(f"not a permutation of 0..{k - 1}: {positions}")
            inverse[char] = rank
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "inverse", tuple(inverse))

    @classmethod
    def identity(cls, k: int) -> Ordering:
        return cls(tuple(range(k)))

    @property
    def k(self) -> int:
        return len(self.positions)

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions)

    def __getitem__(self, rank: int) -> int:
        return self.positions[rank]


@dataclass(frozen=True)
class ContiguityConstraint:
    """Disjoint character groups that must each occupy consecutive ranks."""

    groups: tuple[frozenset[int], ...] = ()

    def __post_init__(self) -> None:
        groups = tuple(frozenset(g) for g in self.groups)
        seen: set[int] = set()
        for g in groups:
            if len(g) < 2:
                raise ValueError(f"group {sorted(g)} has fewer than 2 members")
            if seen & g:
                raise ValueError(f"group {sorted(g)} overlaps another group")
            seen |= g
        # canonical order so equal constraints compare equal
        object.__setattr__(self, "groups", tuple(sorted(groups, key=sorted)))

    def satisfied_by(self, order: Sequence[int]) -> bool:
        inverse = _inverse_of(order)
        return all(_is_contiguous(g, inverse) for g in self.groups)


def _inverse_of(order: Sequence[int] | Ordering) -> Sequence[int]:
    if isinstance(order, Ordering):
        return order.inverse
    inverse = [0] * len(order)
    for rank, char in enumerate(order):
        inverse[char] = rank
    return inverse


def _is_contiguous(group: Iterable[int], inverse: Sequence[int]) -> bool:
    ranks = [inverse[c] for c in group]
    return max(ranks) - min(ranks) + 1 == len(ranks)


def _merge_count(seq: list[int]) -> tuple[list[int], int]:
    n = len(seq)
    if n <= 1:
        return seq, 0
    mid = n // 2
    left, a = _merge_count(seq[:mid])
    right, b = _merge_count(seq[mid:])
    merged: list[int] = []
    count = a + b
    i = j = 0
    nl, nr = len(left), len(right)
    while i < nl and j < nr:
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            # right[j] jumps over every remaining left element
            count += nl - i
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, count


def inversions(seq: Sequence[int]) -> int:
    """Number of pairs ``i < j`` with ``seq[i] > seq[j]`` (merge sort, O(n log n))."""
    return _merge_count(list(seq))[1]


def count_inversions(a: Ordering | Sequence[int], b: Ordering | Sequence[int]) -> int:
    """Inversion distance between two orderings of the same characters.

    Each character in ``a``'s top-to-bottom order is mapped to its rank in
    ``b`` (the composition ``b ∘ a⁻¹``); the inversions of that sequence are
    exactly the pairs ordered differently by ``a`` and ``b``.
    """
    pa = a.positions if isinstance(a, Ordering) else a
    pb = b.positions if isinstance(b, Ordering) else b
    n = len(pa)
    if len(pb) != n:
        raise ValueError(f"size mismatch: {n} vs {len(pb)}")
    # A shared prefix or suffix holds the same characters at the same ranks,
    # so none of them can be part of an inversion.
    lo = 0
    while lo < n and pa[lo] == pb[lo]:
        lo += 1
    if lo == n:
        return 0
    hi = n
    while pa[hi - 1] == pb[hi - 1]:
        hi -= 1
    if hi - lo == 2:
        return 1
    inv_b = b.inverse if isinstance(b, Ordering) else {c: r for r, c in enumerate(pb[lo:hi], lo)}
    return inversions([inv_b[c] for c in pa[lo:hi]])


def rank(o: Ordering | Sequence[int]) -> int:
    """Lehmer-code index of ``o`` in ``0..k!-1``; the identity has rank 0."""
    positions = o.positions if isinstance(o, Ordering) else tuple(o)
    k = len(positions)
    result = 0
    remaining = list(range(k))
    for i, char in enumerate(positions):
        digit = remaining.index(char)
        remaining.pop(digit)
        result += digit * math.factorial(k - 1 - i)
    return result


def unrank(r: int, k: int) -> Ordering:
    """Inverse of :func:`rank`."""
    if not 0 <= r < math.factorial(k):
        raise ValueError(f"rank {r} out of range for k={k}")
    remaining = list(range(k))
    positions = []
    for i in range(k):
        digit, r = divmod(r, math.factorial(k - 1 - i))
        positions.append(remaining.pop(digit))
    return Ordering(tuple(positions))


def count_valid(k: int, c: ContiguityConstraint) -> int:
    """Number of orderings satisfying ``c``: ``b! * prod(|g|!)`` over blocks."""
    grouped = sum(len(g) for g in c.groups)
    blocks = len(c.groups) + (k - grouped)
    total = math.factorial(blocks)
    for g in c.groups:
        total *= math.factorial(len(g))
    return total


def enumerate_valid(k: int, c: ContiguityConstraint | None = None) -> Iterator[Ordering]:
    """Yield every ordering of ``0..k-1`` in which each group is contiguous.

    Built constructively: permute the blocks (groups plus singleton
    characters), then permute inside each group.
    """
    c = c or ContiguityConstraint()
    grouped = set().union(*c.groups) if c.groups else set()
    for g in c.groups:
        if not all(0 <= x < k for x in g):
            raise ValueError(f"group {sorted(g)} outside 0..{k - 1}")
    blocks: list[tuple[int, ...]] = [tuple(sorted(g)) for g in c.groups]
    blocks += [(x,) for x in range(k) if x not in grouped]
    inner = [list(itertools.permutations(block)) for block in blocks]
    for block_order in itertools.permutations(range(len(blocks))):
        for choice in itertools.product(*(inner[i] for i in block_order)):
            yield Ordering(tuple(itertools.chain.from_iterable(choice)))
