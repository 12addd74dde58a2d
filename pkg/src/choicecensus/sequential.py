"""Reachability tables for sequential rationalization over a fixed tournament.

For a tournament ``T`` every ordered partition of its edges is replayed on
every menu once; each schedule that resolves all menus to a single item
induces a choice.  Lookups then answer "which schedule, first in stream
order, reproduces ``c``" in constant time for every choice sharing ``T``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .core import ChoiceFunction, all_menus, pair_edges
from .relations import (
    Edge,
    Relation,
    RationaleSchedule,
    is_acyclic,
    partition_assignments,
)


@lru_cache(maxsize=None)
def _assignment_arrays(m: int):
    assign = np.array(partition_assignments(m), dtype=np.int64).reshape(-1, m)
    nblocks = assign.max(axis=1) + 1
    # edge-subset mask of each block, for the per-block acyclicity filter
    block_masks = np.zeros((assign.shape[0], m), dtype=np.int64)
    for e in range(m):
        block_masks[np.arange(assign.shape[0]), assign[:, e]] |= 1 << e
    return assign, nblocks, block_masks


@dataclass(frozen=True)
class ScheduleTable:
    n: int
    edges: tuple[Edge, ...]
    first_any: dict        # picks -> first schedule index (SR)
    first_acyclic: dict    # picks -> first schedule with acyclic blocks (CLS)
    first_short: dict      # picks -> first schedule with <= 2 blocks (RSM)

    def schedule(self, index: int) -> RationaleSchedule:
        return RationaleSchedule.from_assignment(
            self.n, self.edges, partition_assignments(len(self.edges))[index]
        )


def _first_index(rows: np.ndarray, mask: np.ndarray) -> dict:
    table: dict = {}
    for p in np.flatnonzero(mask).tolist():
        key = tuple(rows[p].tolist())
        if key not in table:
            table[key] = p
    return table


@lru_cache(maxsize=None)
def schedule_table(n: int, edges: tuple[Edge, ...]) -> ScheduleTable:
    assign, nblocks, block_masks = _assignment_arrays(len(edges))
    menus = np.array(all_menus(n), dtype=np.int64)
    winners = np.array([w for w, _ in edges], dtype=np.int64)
    losers = np.array([l for _, l in edges], dtype=np.int64)
    rows = kernels.apply_schedules(menus, winners, losers, assign, nblocks)

    resolved = (rows >= 0).all(axis=1)
    subset_acyclic = np.array(
        [
            is_acyclic(Relation.from_edges(n, (edges[e] for e in range(len(edges)) if (s >> e) & 1)))
            for s in range(1 << len(edges))
        ]
    )
    acyclic = subset_acyclic[block_masks].all(axis=1)
    return ScheduleTable(
        n=n,
        edges=edges,
        first_any=_first_index(rows, resolved),
        first_acyclic=_first_index(rows, resolved & acyclic),
        first_short=_first_index(rows, resolved & (nblocks <= 2)),
    )


def table_for(c: ChoiceFunction) -> ScheduleTable:
    return schedule_table(c.n, pair_edges(c))


def _lookup(c: ChoiceFunction, which: str) -> RationaleSchedule | None:
    table = table_for(c)
    index = getattr(table, which).get(c.picks)
    return None if index is None else table.schedule(index)


def first_sr_schedule(c: ChoiceFunction) -> RationaleSchedule | None:
    return _lookup(c, "first_any")


def first_cls_schedule(c: ChoiceFunction) -> RationaleSchedule | None:
    return _lookup(c, "first_acyclic")


def first_rsm_schedule(c: ChoiceFunction) -> RationaleSchedule | None:
    return _lookup(c, "first_short")
