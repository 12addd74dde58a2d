"""Brute-force references that share no code path with the deciders.

None of these restrict the search to tournament edges or to ordered
partitions; they enumerate arbitrary asymmetric relations directly.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

import numpy as np

from .core import all_menus


@lru_cache(maxsize=None)
def asymmetric_relations(n: int) -> tuple[tuple[int, ...], ...]:
    """Every asymmetric relation on ``n`` items as a tuple of row bitmasks.

    Each unordered pair is absent, forward or backward: ``3 ** C(n, 2)``
    relations in all.
    """
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for states in itertools.product(range(3), repeat=len(pairs)):
        rows = [0] * n
        for (i, j), s in zip(pairs, states):
            if s == 1:
                rows[i] |= 1 << j
            elif s == 2:
                rows[j] |= 1 << i
        out.append(tuple(rows))
    return tuple(out)


def _prune(survivors: int, rows: tuple[int, ...]) -> int:
    dominated = 0
    for x, row in enumerate(rows):
        if (survivors >> x) & 1:
            dominated |= row
    return survivors & ~dominated


def sequential_reachable(n: int, max_len: int) -> set[tuple[int, ...]]:
    """Choices produced by some list of at most ``max_len`` asymmetric relations.

    Explores the state space of per-menu survivor sets, which covers every
    list of the given length without enumerating duplicates.
    """
    menus = all_menus(n)
    relations = asymmetric_relations(n)
    frontier = {tuple(menus)}
    seen = set(frontier)
    for _ in range(max_len):
        nxt = set()
        for state in frontier:
            for rows in relations:
                new = tuple(_prune(s, rows) for s in state)
                if new not in seen:
                    nxt.add(new)
        seen |= nxt
        frontier = nxt
    return {
        tuple(s.bit_length() - 1 for s in state)
        for state in seen
        if all(s and not s & (s - 1) for s in state)
    }


def rsm_pair_reachable(n: int = 4) -> set[tuple[int, ...]]:
    """Choices produced by an ordered pair of asymmetric relations.

    Vectorized over all ``729 ** 2`` pairs for four items.
    """
    relations = asymmetric_relations(n)
    size = 1 << n
    maxtab = np.array(
        [[_prune(s, rows) for s in range(size)] for rows in relations], dtype=np.uint8
    )
    menus = np.array(all_menus(n), dtype=np.intp)
    first = maxtab[:, menus]                                   # (R, M)
    second = maxtab[np.arange(len(relations))[None, :, None], first[:, None, :]]  # (R, R, M)
    second = second.reshape(-1, len(menus))
    singleton = (second != 0) & ((second & (second - 1)) == 0)
    rows = second[singleton.all(axis=1)]
    log2 = np.zeros(size, dtype=np.int64)
    for i in range(n):
        log2[1 << i] = i
    picks = np.unique(log2[rows], axis=0)
    return {tuple(int(v) for v in row) for row in picks}


def fubini(m: int) -> int:
    """Ordered Bell number via ``a(m) = sum_k C(m, k) a(m - k)``."""
    a = [1]
    for j in range(1, m + 1):
        a.append(sum(comb(j, k) * a[j - k] for k in range(1, j + 1)))
    return a[m]


def count_ordered_partitions(items: int) -> int:
    """Count by enumeration: pick a nonempty first block, recurse on the rest."""

    def rec(rest: int) -> int:
        if not rest:
            return 1
        return sum(rec(rest & ~block) for block in range(1, rest + 1) if block & rest == block)

    return rec((1 << items) - 1)
