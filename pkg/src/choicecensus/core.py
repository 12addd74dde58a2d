"""Ground sets, menus, choice functions and relabelings.

Menus are plain ``int`` bitmasks: bit ``i`` is item ``i``, and item order is
the label order of the ground set.  A choice function stores one pick per
menu of size >= 2, in the canonical menu order returned by :func:`all_menus`
(ascending size, then lexicographic on the sorted item indices).
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

DEFAULT_LABELS = ("a", "b", "d", "e")
MIN_ITEMS = 2
MAX_ITEMS = 4


class ChoiceFormatError(ValueError):
    """Base class for malformed serialized choices."""


class MissingMenu(ChoiceFormatError):
    pass


class NonMemberChoice(ChoiceFormatError):
    pass


class UnknownLabel(ChoiceFormatError):
    pass


class DuplicateMenu(ChoiceFormatError):
    pass


# -- bitmask helpers ---------------------------------------------------------

def menu_size(menu: int) -> int:
    return bin(menu).count("1")


def menu_items(menu: int) -> tuple[int, ...]:
    items = []
    i = 0
    while menu:
        if menu & 1:
            items.append(i)
        menu >>= 1
        i += 1
    return tuple(items)


def mask_of(items) -> int:
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


def submasks(mask: int) -> Iterator[int]:
    """Nonempty submasks of ``mask`` in ascending order."""
    return (s for s in range(1, mask + 1) if s & mask == s)


@lru_cache(maxsize=None)
def all_menus(n: int) -> tuple[int, ...]:
    """All menus of size >= 2 in canonical order, ``2**n - n - 1`` of them."""
    if not MIN_ITEMS <= n <= MAX_ITEMS:
        raise ValueError(f"ground set size must be in [{MIN_ITEMS}, {MAX_ITEMS}], got {n}")
    return tuple(
        mask_of(combo)
        for size in range(2, n + 1)
        for combo in itertools.combinations(range(n), size)
    )


@lru_cache(maxsize=None)
def menu_index(n: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(all_menus(n))}


# -- ground set --------------------------------------------------------------

@dataclass(frozen=True)
class GroundSet:
    n: int
    labels: tuple[str, ...]

    def __post_init__(self):
        if not MIN_ITEMS <= self.n <= MAX_ITEMS:
            raise ValueError(f"ground set size must be in [{MIN_ITEMS}, {MAX_ITEMS}], got {self.n}")
        if len(self.labels) != self.n:
            raise ValueError("need exactly one label per item")
        if len(set(self.labels)) != self.n:
            raise ValueError("labels must be pairwise distinct")
        if any(len(lab) != 1 for lab in self.labels):
            raise ValueError("labels must be single characters")

    @classmethod
    def of_size(cls, n: int) -> GroundSet:
        return cls(n, DEFAULT_LABELS[:n])

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def menus(self) -> tuple[int, ...]:
        return all_menus(self.n)

    def label(self, item: int) -> str:
        return self.labels[item]

    def item(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"unknown item label {label!r}") from None

    def menu_label(self, menu: int) -> str:
        return "".join(self.labels[i] for i in menu_items(menu))

    def parse_menu(self, text: str) -> int:
        if not text:
            raise ChoiceFormatError("empty menu key")
        items = [self.item(ch) for ch in text]
        if len(set(items)) != len(items):
            raise ChoiceFormatError(f"repeated item in menu key {text!r}")
        return mask_of(items)


# -- choice functions --------------------------------------------------------

@dataclass(frozen=True)
class ChoiceFunction:
    """A total choice on all menus of size >= 2.

    ``picks[k]`` is the item chosen from ``all_menus(n)[k]``.
    """

    ground: GroundSet
    picks: tuple[int, ...]

    def __post_init__(self):
        menus = all_menus(self.ground.n)
        if len(self.picks) != len(menus):
            raise ValueError(f"expected {len(menus)} picks, got {len(self.picks)}")
        for menu, pick in zip(menus, self.picks):
            if not (menu >> pick) & 1:
                raise NonMemberChoice(
                    f"c({self.ground.menu_label(menu)}) = item {pick} is not in the menu"
                )

    @property
    def n(self) -> int:
        return self.ground.n

    def __call__(self, menu: int) -> int:
        """The chosen item; singletons choose their only member."""
        if menu & (menu - 1) == 0:
            if menu == 0:
                raise ValueError("empty menu has no choice")
            return menu.bit_length() - 1
        return self.picks[menu_index(self.ground.n)[menu]]

    @classmethod
    def from_mapping(cls, ground: GroundSet, mapping: Mapping[int, int]) -> ChoiceFunction:
        menus = all_menus(ground.n)
        missing = [m for m in menus if m not in mapping]
        if missing:
            raise MissingMenu(
                "missing menus: " + ", ".join(ground.menu_label(m) for m in missing)
            )
        return cls(ground, tuple(mapping[m] for m in menus))

    def as_mapping(self) -> dict[int, int]:
        return dict(zip(all_menus(self.n), self.picks))

    def compact(self) -> str:
        return ".".join(self.ground.label(p) for p in self.picks)

    def __str__(self) -> str:
        return self.compact()


def parse_compact(text: str, ground: GroundSet | None = None) -> ChoiceFunction:
    """Parse the dotted one-line form, e.g. ``a.a.e.b.b.d.a.b.d.b.b``."""
    parts = text.strip().split(".")
    if ground is None:
        n = {1: 2, 4: 3, 11: 4}.get(len(parts))
        if n is None:
            raise ChoiceFormatError(f"cannot infer ground set size from {len(parts)} picks")
        ground = GroundSet.of_size(n)
    if len(parts) != len(all_menus(ground.n)):
        raise MissingMenu(f"expected {len(all_menus(ground.n))} picks, got {len(parts)}")
    return ChoiceFunction(ground, tuple(ground.item(p) for p in parts))


def _reject_duplicate_keys(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise DuplicateMenu(f"menu key {key!r} appears twice")
        seen[key] = value
    return seen


def choice_from_json(data: Mapping) -> ChoiceFunction:
    """Build a choice from the decoded JSON object ``{"n", "items", "c"}``."""
    try:
        items = tuple(data["items"])
        table = data["c"]
    except (KeyError, TypeError):
        raise ChoiceFormatError('choice object needs "items" and "c"') from None
    n = data.get("n", len(items))
    if n != len(items):
        raise ChoiceFormatError(f'"n" is {n} but {len(items)} items are listed')
    try:
        ground = GroundSet(n, items)
    except ValueError as exc:
        raise ChoiceFormatError(str(exc)) from None
    if not isinstance(table, Mapping):
        raise ChoiceFormatError('"c" must be an object')
    mapping: dict[int, int] = {}
    for key, value in table.items():
        menu = ground.parse_menu(key)
        if key != ground.menu_label(menu):
            raise ChoiceFormatError(f"menu key {key!r} must list items in label order")
        if menu in mapping:
            raise DuplicateMenu(f"menu {ground.menu_label(menu)} given twice")
        if not isinstance(value, str):
            raise ChoiceFormatError(f"pick for {key!r} must be a label")
        pick = ground.item(value)
        if not (menu >> pick) & 1:
            raise NonMemberChoice(f"c({key}) = {value} is not a member of the menu")
        mapping[menu] = pick
    mapping = {m: p for m, p in mapping.items() if menu_size(m) >= 2}
    return ChoiceFunction.from_mapping(ground, mapping)


def parse_choice(text: str) -> ChoiceFunction:
    try:
        data = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except DuplicateMenu:
        raise
    except json.JSONDecodeError as exc:
        raise ChoiceFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, Mapping):
        raise ChoiceFormatError("choice JSON must be an object")
    return choice_from_json(data)


def choice_to_json(c: ChoiceFunction) -> dict:
    g = c.ground
    return {
        "n": g.n,
        "items": list(g.labels),
        "c": {g.menu_label(m): g.label(p) for m, p in zip(g.menus(), c.picks)},
    }


def serialize_choice(c: ChoiceFunction) -> str:
    return json.dumps(choice_to_json(c))


# -- relabelings -------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """``sigma[i]`` is the image of item ``i``."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError(f"not a bijection: {self.sigma}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    def __call__(self, item: int) -> int:
        return self.sigma[item]

    def image(self, menu: int) -> int:
        return mask_of(self.sigma[i] for i in menu_items(menu))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.sigma)
        for i, j in enumerate(self.sigma):
            inv[j] = i
        return Permutation(tuple(inv))

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        return Permutation(tuple(other.sigma[j] for j in self.sigma))

    def describe(self, ground: GroundSet) -> dict[str, str]:
        return {ground.label(i): ground.label(j) for i, j in enumerate(self.sigma)}


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """All relabelings in lexicographic one-line order."""
    return tuple(Permutation(p) for p in itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def _menu_slot_map(sigma: tuple[int, ...]) -> tuple[int, ...]:
    n = len(sigma)
    index = menu_index(n)
    perm = Permutation(sigma)
    return tuple(index[perm.image(m)] for m in all_menus(n))


def apply_permutation(c: ChoiceFunction, s: Permutation) -> ChoiceFunction:
    """The relabeled choice ``c'`` with ``c'(s(A)) = s(c(A))``."""
    if len(s.sigma) != c.n:
        raise ValueError("permutation size does not match the ground set")
    slots = _menu_slot_map(s.sigma)
    picks = [0] * len(c.picks)
    for k, pick in enumerate(c.picks):
        picks[slots[k]] = s.sigma[pick]
    return ChoiceFunction(c.ground, tuple(picks))


def canonicalize_greedy(c: ChoiceFunction) -> tuple[ChoiceFunction, Permutation]:
    """Relabel so that c(X) is item 0, c(X minus it) is item 1, and so on.

    The relabeling is forced at every step, so the witnessing permutation is
    unique.
    """
    sigma = [0] * c.n
    remaining = c.ground.full
    rank = 0
    while remaining & (remaining - 1):
        x = c(remaining)
        sigma[x] = rank
        remaining &= ~(1 << x)
        rank += 1
    sigma[remaining.bit_length() - 1] = rank
    perm = Permutation(tuple(sigma))
    return apply_permutation(c, perm), perm


def canonicalize_min(c: ChoiceFunction) -> ChoiceFunction:
    """Lexicographically smallest pick vector over all relabelings."""
    best = min(apply_permutation(c, s).picks for s in all_permutations(c.n))
    return ChoiceFunction(c.ground, best)


def is_isomorphic(c: ChoiceFunction, c2: ChoiceFunction) -> tuple[bool, Permutation | None]:
    if c.n != c2.n:
        raise ValueError("choices live on ground sets of different sizes")
    for s in all_permutations(c.n):
        if apply_permutation(c, s).picks == c2.picks:
            return True, s
    return False, None


def normalization_chain(n: int) -> dict[int, int]:
    """Menus fixed by normalization, mapped to their forced pick.

    For ``n = 4`` this is ``abde -> a``, ``bde -> b``, ``de -> d``.
    """
    full = (1 << n) - 1
    return {full & ~((1 << k) - 1): k for k in range(n - 1)}


def enumerate_normalized(g: GroundSet) -> Iterator[ChoiceFunction]:
    """Every normalized choice, lexicographic in the canonical menu order."""
    fixed = normalization_chain(g.n)
    options = [
        (fixed[m],) if m in fixed else menu_items(m)
        for m in all_menus(g.n)
    ]
    for picks in itertools.product(*options):
        yield ChoiceFunction(g, picks)


def all_labeled_choices(g: GroundSet) -> Iterator[ChoiceFunction]:
    for picks in itertools.product(*(menu_items(m) for m in all_menus(g.n))):
        yield ChoiceFunction(g, picks)


# -- binary tournament -------------------------------------------------------

class TournamentClass(enum.Enum):
    FOUR_CYCLE = "FourCycle"
    SOURCE_AND_SINK = "SourceAndSink"
    SOURCE_NO_SINK = "SourceNoSink"
    SINK_NO_SOURCE = "SinkNoSource"

    def __str__(self) -> str:
        return self.value


CLASS_ORDER = (
    TournamentClass.FOUR_CYCLE,
    TournamentClass.SOURCE_AND_SINK,
    TournamentClass.SOURCE_NO_SINK,
    TournamentClass.SINK_NO_SOURCE,
)


def pair_edges(c: ChoiceFunction) -> tuple[tuple[int, int], ...]:
    """Tournament edges ``(winner, loser)``, one per pair in canonical order."""
    edges = []
    for i, j in itertools.combinations(range(c.n), 2):
        w = c((1 << i) | (1 << j))
        edges.append((w, j if w == i else i))
    return tuple(edges)


def base_tournament(c: ChoiceFunction):
    from .relations import Relation

    return Relation.from_edges(c.n, pair_edges(c))


def classify_tournament(c: ChoiceFunction) -> TournamentClass:
    if c.n != 4:
        raise ValueError("tournament classes are defined for four items only")
    wins = [0] * c.n
    for w, _ in pair_edges(c):
        wins[w] += 1
    source = (c.n - 1) in wins
    sink = 0 in wins
    if source and sink:
        return TournamentClass.SOURCE_AND_SINK
    if source:
        return TournamentClass.SOURCE_NO_SINK
    if sink:
        return TournamentClass.SINK_NO_SOURCE
    return TournamentClass.FOUR_CYCLE

