"""Binary relations on at most four items, linear orders and rationale schedules."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .core import GroundSet, menu_items

Edge = tuple[int, int]


@dataclass(frozen=True)
class RelationFlags:
    asymmetric: bool
    complete: bool
    acyclic: bool
    transitive: bool
    linear_order: bool


@dataclass(frozen=True)
class Relation:
    """Edges ``(x, y)`` meaning x is preferred to (eliminates) y.

    Stored as a bit matrix: ``rows[x]`` has bit y set iff ``(x, y)`` is an edge.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        for x, row in enumerate(self.rows):
            if (row >> x) & 1:
                raise ValueError(f"self-loop on item {x}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Relation:
        rows = [0] * n
        for x, y in edges:
            rows[x] |= 1 << y
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Relation:
        return cls(n, (0,) * n)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(
            (x, y) for x, row in enumerate(self.rows) for y in menu_items(row)
        )

    def __contains__(self, edge: Edge) -> bool:
        x, y = edge
        return bool((self.rows[x] >> y) & 1)

    def __len__(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def union(self, other: Relation) -> Relation:
        return Relation(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def transitive_closure(self) -> Relation:
        rows = closure_rows(self.rows)
        if not _loop_free(rows):
            raise ValueError("closure of a cyclic relation has self-loops")
        return Relation(self.n, rows)

    def properties(self) -> RelationFlags:
        return relation_properties(self)

    def labelled_edges(self, ground: GroundSet) -> list[list[str]]:
        return [[ground.label(x), ground.label(y)] for x, y in sorted(self.edges)]


def closure_rows(rows: Sequence[int]) -> tuple[int, ...]:
    """Transitive closure of a bit matrix by iterated squaring."""
    rows = tuple(rows)
    while True:
        nxt = []
        for row in rows:
            acc = row
            for y in menu_items(row):
                acc |= rows[y]
            nxt.append(acc)
        nxt = tuple(nxt)
        if nxt == rows:
            return rows
        rows = nxt


def _loop_free(rows: Sequence[int]) -> bool:
    return all(not (row >> x) & 1 for x, row in enumerate(rows))


def relation_properties(r: Relation) -> RelationFlags:
    n = r.n
    asymmetric = all(not ((r.rows[y] >> x) & 1) for x, y in r.edges)
    complete = all(
        (x, y) in r or (y, x) in r for x, y in itertools.combinations(range(n), 2)
    )
    closure = closure_rows(r.rows)
    acyclic = _loop_free(closure)
    transitive = closure == r.rows
    return RelationFlags(
        asymmetric=asymmetric,
        complete=complete,
        acyclic=acyclic,
        transitive=transitive,
        linear_order=asymmetric and complete and transitive,
    )


def is_acyclic(r: Relation) -> bool:
    return _loop_free(closure_rows(r.rows))


def max_set(menu: int, r: Relation) -> int:
    """Undominated members of ``menu``; may be empty under cyclic domination."""
    dominated = 0
    for x in menu_items(menu):
        dominated |= r.rows[x]
    return menu & ~dominated


# -- linear orders -----------------------------------------------------------

@dataclass(frozen=True)
class LinearOrder:
    """``ranking`` lists items best first."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError(f"not a ranking of all items: {self.ranking}")

    @property
    def n(self) -> int:
        return len(self.ranking)

    @property
    def position(self) -> tuple[int, ...]:
        pos = [0] * self.n
        for k, x in enumerate(self.ranking):
            pos[x] = k
        return tuple(pos)

    def above(self, x: int, y: int) -> bool:
        pos = self.position
        return pos[x] < pos[y]

    def best(self, menu: int) -> int:
        for x in self.ranking:
            if (menu >> x) & 1:
                return x
        raise ValueError("empty menu")

    def worst(self, menu: int) -> int:
        for x in reversed(self.ranking):
            if (menu >> x) & 1:
                return x
        raise ValueError("empty menu")

    def upper_contour(self, x: int) -> int:
        """Items strictly above ``x``."""
        mask = 0
        for y in self.ranking:
            if y == x:
                return mask
            mask |= 1 << y
        raise ValueError(f"item {x} not ranked")

    def relation(self) -> Relation:
        return Relation.from_edges(self.n, itertools.combinations(self.ranking, 2))

    def labels(self, ground: GroundSet) -> list[str]:
        return [ground.label(x) for x in self.ranking]


@lru_cache(maxsize=None)
def all_linear_orders(n: int) -> tuple[LinearOrder, ...]:
    if not 2 <= n <= 4:
        raise ValueError("linear orders are enumerated for 2 to 4 items")
    return tuple(LinearOrder(p) for p in itertools.permutations(range(n)))


# -- rationale schedules -----------------------------------------------------

@dataclass(frozen=True)
class RationaleSchedule:
    """An ordered list of rationales; block ``i`` is applied at stage ``i``.

    Built by :func:`ordered_partitions` the blocks are nonempty and pairwise
    disjoint.  :meth:`from_relations` accepts arbitrary lists (edges may repeat
    across stages), which is how hand-written rationale lists are replayed.
    """

    n: int
    blocks: tuple[frozenset[Edge], ...]

    @classmethod
    def from_relations(cls, n: int, blocks: Iterable[Iterable[Edge]]) -> RationaleSchedule:
        return cls(n, tuple(frozenset(b) for b in blocks))

    @classmethod
    def from_assignment(cls, n: int, edges: Sequence[Edge], assignment: Sequence[int]) -> RationaleSchedule:
        k = max(assignment) + 1 if assignment else 0
        blocks: list[set[Edge]] = [set() for _ in range(k)]
        for edge, stage in zip(edges, assignment):
            blocks[stage].add(edge)
        return cls(n, tuple(frozenset(b) for b in blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def is_partition(self) -> bool:
        seen: set[Edge] = set()
        for block in self.blocks:
            if not block or block & seen:
                return False
            seen |= block
        return True

    def relations(self) -> list[Relation]:
        return [Relation.from_edges(self.n, b) for b in self.blocks]

    def stage(self, edge: Edge) -> int:
        """Index of the first block containing ``edge``."""
        for k, block in enumerate(self.blocks):
            if edge in block:
                return k
        raise KeyError(edge)

    def blocks_acyclic(self) -> bool:
        return all(is_acyclic(r) for r in self.relations())

    def to_json(self, ground: GroundSet) -> dict:
        return {
            "blocks": [
                [[ground.label(x), ground.label(y)] for x, y in sorted(block)]
                for block in self.blocks
            ]
        }

    @classmethod
    def from_json(cls, ground: GroundSet, data: dict) -> RationaleSchedule:
        return cls.from_relations(
            ground.n,
            [[(ground.item(x), ground.item(y)) for x, y in block] for block in data["blocks"]],
        )


def sequential_apply(menu: int, schedule: RationaleSchedule, trace: bool = False):
    """Prune ``menu`` by each rationale in turn.

    Returns the surviving item mask, or ``(mask, [M0, M1, ...])`` when
    ``trace`` is set.
    """
    current = menu
    steps = [current]
    for rel in schedule.relations():
        current = max_set(current, rel)
        steps.append(current)
    if trace:
        return current, steps
    return current


@lru_cache(maxsize=None)
def partition_assignments(m: int) -> tuple[tuple[int, ...], ...]:
    """Stage assignments of ``m`` edges onto ``k`` nonempty stages.

    Ordered by ascending ``k``, then lexicographically; each assignment is a
    surjection ``range(m) -> range(k)``.
    """
    out = []
    for k in range(1, m + 1):
        for assignment in itertools.product(range(k), repeat=m):
            if len(set(assignment)) == k:
                out.append(assignment)
    return tuple(out)


def ordered_partitions(edges: Sequence[Edge], n: int | None = None) -> Iterator[RationaleSchedule]:
    """Every ordered set partition of ``edges``, as rationale schedules."""
    edges = tuple(edges)
    if not edges:
        raise ValueError("edge set must be nonempty")
    if n is None:
        n = max(max(e) for e in edges) + 1
    for assignment in partition_assignments(len(edges)):
        yield RationaleSchedule.from_assignment(n, edges, assignment)
