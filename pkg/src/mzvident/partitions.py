"""Enumeration of subsets, permutations and set partitions of index sets.

Ground sets are bitmasks (see indexsets).  An ordered partition is a tuple of
non-empty pairwise-disjoint masks covering the ground set; an unordered
partition is the same with parts sorted by smallest element.

Enumeration order is fixed: part-count major, then lexicographic on the
tuple-of-index-tuples serialization, so golden outputs are stable.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial

from .indexsets import indices_of, min_index, size, submasks

OrderedPartition = tuple[int, ...]
UnorderedPartition = tuple[int, ...]  # parts sorted by smallest element


def _require_nonempty(ground: int) -> None:
    if not ground:
        raise ValueError("empty ground set")


def ordered_set_partitions(ground: int) -> list[OrderedPartition]:
    """All ordered set partitions of `ground`, each exactly once."""
    _require_nonempty(ground)
    out: list[OrderedPartition] = []

    def rec(remaining: int, prefix: tuple[int, ...]) -> None:
        if not remaining:
            out.append(prefix)
            return
        for part in submasks(remaining):
            rec(remaining & ~part, prefix + (part,))

    rec(ground, ())
    out.sort(key=lambda p: (len(p), tuple(indices_of(m) for m in p)))
    return out


def unordered_set_partitions(ground: int) -> list[UnorderedPartition]:
    """All unordered set partitions of `ground`, parts sorted by min element."""
    _require_nonempty(ground)
    out: list[UnorderedPartition] = []

    def rec(remaining: int, prefix: tuple[int, ...]) -> None:
        if not remaining:
            out.append(prefix)
            return
        # The part containing the smallest remaining element is canonical,
        # which kills duplicate orderings at the source.
        low = remaining & -remaining
        rest = remaining & ~low
        for extra in [0] + submasks(rest):
            part = low | extra
            rec(remaining & ~part, prefix + (part,))

    rec(ground, ())
    out.sort(key=lambda p: (len(p), tuple(indices_of(m) for m in p)))
    return out


def permutations(ground: int) -> list[tuple[int, ...]]:
    """All orderings of the members of `ground`, lexicographic."""
    _require_nonempty(ground)
    return list(itertools.permutations(indices_of(ground)))


@lru_cache(maxsize=None)
def fubini_count(n: int) -> int:
    """Number of ordered set partitions of an n-element set (exact)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    # F(n) = sum_k C(n,k) F(n-k), F(0) = 1: choose the first part, recurse.
    f = [1] * (n + 1)
    for m in range(1, n + 1):
        f[m] = sum(comb(m, k) * f[m - k] for k in range(1, m + 1))
    return f[n]


@lru_cache(maxsize=None)
def bell_count(n: int) -> int:
    """Number of unordered set partitions of an n-element set (exact)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    # B(n+1) = sum_k C(n,k) B(k), B(0) = 1.
    b = [1] * (n + 1)
    for m in range(1, n + 1):
        b[m] = sum(comb(m - 1, k) * b[k] for k in range(m))
    return b[n]


def check_partition(parts: tuple[int, ...], ground: int) -> None:
    """Raise unless `parts` are non-empty, disjoint and cover `ground`."""
    seen = 0
    for part in parts:
        if not part:
            raise ValueError("empty part")
        if seen & part:
            raise ValueError("overlapping parts")
        seen |= part
    if seen != ground:
        raise ValueError("parts do not cover the ground set")


__all__ = [
    "OrderedPartition",
    "UnorderedPartition",
    "ordered_set_partitions",
    "unordered_set_partitions",
    "permutations",
    "fubini_count",
    "bell_count",
    "check_partition",
    "min_index",
    "size",
    "factorial",
]
