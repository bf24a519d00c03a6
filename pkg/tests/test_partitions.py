import itertools

import pytest

from mzvident.indexsets import full_universe, indices_of, mask_of
from mzvident.partitions import (
    bell_count,
    check_partition,
    fubini_count,
    ordered_set_partitions,
    permutations,
    unordered_set_partitions,
)


def brute_unordered_partitions(elements):
    """Oracle: enumerate via restricted-growth strings."""
    elements = list(elements)
    n = len(elements)
    out = set()
    for labels in itertools.product(range(n), repeat=n):
        # restricted growth: first occurrence of label k comes after k-1
        seen = []
        ok = True
        for l in labels:
            if l not in seen:
                if l != len(seen):
                    ok = False
                    break
                seen.append(l)
        if not ok:
            continue
        groups = {}
        for e, l in zip(elements, labels):
            groups.setdefault(l, []).append(e)
        out.add(frozenset(frozenset(g) for g in groups.values()))
    return out


def brute_ordered_partitions(elements):
    out = set()
    for unordered in brute_unordered_partitions(elements):
        for perm in itertools.permutations(unordered):
            out.add(tuple(perm))
    return out


def test_single_element():
    assert ordered_set_partitions(mask_of([1])) == [(1,)]


def test_empty_ground_rejected():
    with pytest.raises(ValueError, match="empty ground set"):
        ordered_set_partitions(0)
    with pytest.raises(ValueError, match="empty ground set"):
        unordered_set_partitions(0)
    with pytest.raises(ValueError):
        permutations(0)


def test_ordered_counts_match_fubini():
    # 13 for n=3 anchors the thirteen-coefficient canonical display.
    assert [len(ordered_set_partitions(full_universe(n))) for n in (1, 2, 3, 4)] == [
        1,
        3,
        13,
        75,
    ]
    for n in range(1, 8):
        assert len(ordered_set_partitions(full_universe(n))) == fubini_count(n)


def test_ordered_matches_brute_force():
    for n in (1, 2, 3, 4):
        got = {
            tuple(frozenset(indices_of(p)) for p in parts)
            for parts in ordered_set_partitions(full_universe(n))
        }
        assert got == brute_ordered_partitions(range(1, n + 1))


def test_unordered_pair():
    got = unordered_set_partitions(mask_of([1, 2]))
    assert got == [(mask_of([1, 2]),), (mask_of([1]), mask_of([2]))] or got == [
        (mask_of([1]), mask_of([2])),
        (mask_of([1, 2]),),
    ]
    assert len(got) == 2


def test_unordered_counts_match_bell():
    assert len(unordered_set_partitions(full_universe(3))) == 5
    assert len(unordered_set_partitions(full_universe(5))) == 52
    for n in range(1, 8):
        assert len(unordered_set_partitions(full_universe(n))) == bell_count(n)


def test_unordered_matches_brute_force():
    for n in (1, 2, 3, 4):
        got = {
            frozenset(frozenset(indices_of(p)) for p in parts)
            for parts in unordered_set_partitions(full_universe(n))
        }
        assert got == brute_unordered_partitions(range(1, n + 1))


def test_forgetting_order_gives_unordered():
    for n in range(1, 6):
        ground = full_universe(n)
        forgot = {frozenset(p) for p in ordered_set_partitions(ground)}
        unord = {frozenset(p) for p in unordered_set_partitions(ground)}
        assert forgot == unord


def test_every_partition_satisfies_invariants():
    ground = mask_of([2, 3, 5])
    for parts in ordered_set_partitions(ground) + unordered_set_partitions(ground):
        check_partition(parts, ground)


def test_no_duplicates_emitted():
    for n in range(1, 6):
        ordered = ordered_set_partitions(full_universe(n))
        assert len(ordered) == len(set(ordered))
        unordered = unordered_set_partitions(full_universe(n))
        assert len(unordered) == len({frozenset(p) for p in unordered})


def test_permutations_basic():
    assert permutations(mask_of([1])) == [(1,)]
    assert permutations(mask_of([1, 2])) == [(1, 2), (2, 1)]
    assert len(permutations(full_universe(3))) == 6
    assert len(set(permutations(full_universe(4)))) == 24


def test_fubini_values():
    assert fubini_count(2) == 3
    assert fubini_count(3) == 13
    assert fubini_count(5) == 541
    with pytest.raises(ValueError):
        fubini_count(0)


def test_fubini_no_silent_wrap():
    # Fubini(20) exceeds 64 bits; exact integers must carry it.
    assert fubini_count(20) > 2**63


def test_bell_values():
    assert [bell_count(n) for n in range(1, 8)] == [1, 2, 5, 15, 52, 203, 877]
    with pytest.raises(ValueError):
        bell_count(0)


def test_deterministic_order():
    a = ordered_set_partitions(full_universe(3))
    b = ordered_set_partitions(full_universe(3))
    assert a == b
    # part-count major
    sizes = [len(p) for p in a]
    assert sizes == sorted(sizes)
