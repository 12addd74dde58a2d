"""Decision procedures for the bounded-rationality models.

Every ``check_*`` function takes a :class:`~choicecensus.core.ChoiceFunction`
and returns a :class:`ModelVerdict`.  Model-defined properties carry a
witness on success (a linear order, a rationale schedule, a status-quo
triple, a partition map); axiom-defined properties carry the first violation
found in a fixed scan order on failure.

Counterexample dictionaries use one naming rule: keys starting with an
upper-case letter hold menus (bitmasks), lower-case keys hold items.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable

from .core import ChoiceFunction, GroundSet, all_menus, menu_items, menu_size, submasks
from .relations import LinearOrder, RationaleSchedule, all_linear_orders
from .sequential import first_cls_schedule, first_rsm_schedule, first_sr_schedule


class ModeDisagreement(RuntimeError):
    """Equivalent formulations of one model returned different verdicts."""


@dataclass(frozen=True)
class ModelVerdict:
    model: str
    holds: bool
    witness: Any = None
    counterexample: dict | None = None
    parts: dict[str, ModelVerdict] = field(default_factory=dict)

    def to_json(self, ground: GroundSet) -> dict:
        out = {
            "model": self.model,
            "holds": self.holds,
            "witness": witness_to_json(self.witness, ground),
            "counterexample": counterexample_to_json(self.counterexample, ground),
        }
        if self.parts:
            out["parts"] = {k: v.to_json(ground) for k, v in self.parts.items()}
        return out


def counterexample_to_json(cex: dict | None, ground: GroundSet) -> dict | None:
    if cex is None:
        return None
    return {
        key: ground.menu_label(val) if key[0].isupper() else ground.label(val)
        for key, val in cex.items()
    }


def witness_to_json(witness: Any, ground: GroundSet):
    if witness is None:
        return None
    if isinstance(witness, LinearOrder):
        return {"order": witness.labels(ground)}
    return witness.to_json(ground)


# -- witness payloads --------------------------------------------------------

@dataclass(frozen=True)
class SqbTriple:
    variant: str  # "esqb" or "wsqb"
    order: LinearOrder
    status_quo: int
    q_set: int

    def predict(self, menu: int) -> int:
        z = self.status_quo
        if not (menu >> z) & 1:
            return self.order.best(menu)
        hit = self.q_set & menu
        if not hit:
            return z
        if self.variant == "esqb":
            return self.order.best(hit)
        return self.order.best(menu & ~(1 << z))

    def to_json(self, ground: GroundSet) -> dict:
        return {
            "variant": self.variant,
            "order": self.order.labels(ground),
            "status_quo": ground.label(self.status_quo),
            "q_set": [ground.label(i) for i in menu_items(self.q_set)],
        }


@dataclass(frozen=True)
class SqbWitness:
    esqb: SqbTriple | None
    wsqb: SqbTriple | None

    @property
    def tag(self) -> str:
        if self.esqb and self.wsqb:
            return "both"
        return "esqb" if self.esqb else "wsqb"

    def to_json(self, ground: GroundSet) -> dict:
        return {
            "tag": self.tag,
            "esqb": self.esqb.to_json(ground) if self.esqb else None,
            "wsqb": self.wsqb.to_json(ground) if self.wsqb else None,
        }


@dataclass(frozen=True)
class WsPartitionWitness:
    """Menu -> ``(B, D)`` with B holding the lowest-indexed item of the menu."""

    partitions: dict[int, tuple[int, int]]

    def to_json(self, ground: GroundSet) -> dict:
        return {
            "partitions": {
                ground.menu_label(a): [ground.menu_label(b), ground.menu_label(d)]
                for a, (b, d) in self.partitions.items()
            }
        }


@dataclass(frozen=True)
class Switch:
    """``(B minus x, B)`` with ``c(B minus x) != c(B) != x``."""

    base_menu: int
    removed: int
    before: int
    after: int

    def __post_init__(self):
        if menu_size(self.base_menu) < 3 or not (self.base_menu >> self.removed) & 1:
            raise ValueError("switch base menu must have >= 3 items and contain the removed item")
        if self.before == self.after or self.after == self.removed:
            raise ValueError("not a switch")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.before, self.after, self.removed)

    def to_json(self, ground: GroundSet) -> dict:
        return {
            "base_menu": ground.menu_label(self.base_menu),
            "removed": ground.label(self.removed),
            "before": ground.label(self.before),
            "after": ground.label(self.after),
        }


# -- rationalizability and simple axioms -------------------------------------

@lru_cache(maxsize=None)
def _rationalizable_table(n: int) -> dict[tuple[int, ...], LinearOrder]:
    table: dict[tuple[int, ...], LinearOrder] = {}
    for order in all_linear_orders(n):
        table.setdefault(tuple(order.best(m) for m in all_menus(n)), order)
    return table


def check_rationalizable(c: ChoiceFunction) -> ModelVerdict:
    order = _rationalizable_table(c.n).get(c.picks)
    return ModelVerdict("rationalizable", order is not None, witness=order)


def _pair(x: int, y: int) -> int:
    return (1 << x) | (1 << y)


def check_ac(c: ChoiceFunction) -> ModelVerdict:
    for menu in all_menus(c.n):
        for x in menu_items(menu):
            if all(c(_pair(x, y)) == x for y in menu_items(menu) if y != x):
                if c(menu) != x:
                    return ModelVerdict("ac", False, counterexample={"A": menu, "x": x})
                break
    return ModelVerdict("ac", True)


def wwarp_violation(c: ChoiceFunction, x: int, y: int, a: int, b: int) -> bool:
    """Whether ``(x, y, A, B)`` breaks WWARP."""
    return (
        x != y
        and (a >> x) & 1 and (a >> y) & 1
        and a & b == a
        and c(_pair(x, y)) == x == c(b)
        and c(a) == y
    )


def check_wwarp(c: ChoiceFunction) -> ModelVerdict:
    menus = all_menus(c.n)
    for b in menus:
        x = c(b)
        for a in menus:
            if a & b != a or not (a >> x) & 1:
                continue
            y = c(a)
            if y != x and c(_pair(x, y)) == x:
                return ModelVerdict(
                    "wwarp", False, counterexample={"x": x, "y": y, "A": a, "B": b}
                )
    return ModelVerdict("wwarp", True)


def check_gamma(c: ChoiceFunction) -> ModelVerdict:
    menus = all_menus(c.n)
    for i, a in enumerate(menus):
        x = c(a)
        for b in menus[i + 1:]:
            if c(b) == x and c(a | b) != x:
                return ModelVerdict("gamma", False, counterexample={"A": a, "B": b, "x": x})
    return ModelVerdict("gamma", True)


def check_ec(c: ChoiceFunction) -> ModelVerdict:
    menus = all_menus(c.n)
    for a in menus:
        ca = c(a)
        for x in range(c.n):
            if (a >> x) & 1:
                continue
            if c(a | (1 << x)) in (ca, x):
                continue
            for a2 in menus:
                if (a2 >> x) & 1 and c(a2) == ca:
                    return ModelVerdict(
                        "ec", False, counterexample={"A": a, "x": x, "A_prime": a2}
                    )
    return ModelVerdict("ec", True)


# -- sequential models -------------------------------------------------------

RSM_MODES = ("axiom", "ec", "schedule", "all")


def check_rsm(c: ChoiceFunction, mode: str = "schedule") -> ModelVerdict:
    if mode not in RSM_MODES:
        raise ValueError(f"unknown RSM mode {mode!r}")
    if mode == "axiom":
        ww, ga = check_wwarp(c), check_gamma(c)
        holds = ww.holds and ga.holds
        cex = None if holds else (ww.counterexample or ga.counterexample)
        return ModelVerdict("rsm", holds, counterexample=cex, parts={"wwarp": ww, "gamma": ga})
    if mode == "ec":
        ec = check_ec(c)
        return ModelVerdict("rsm", ec.holds, counterexample=ec.counterexample)
    if mode == "schedule":
        sched = first_rsm_schedule(c)
        return ModelVerdict("rsm", sched is not None, witness=sched)
    verdicts = {m: check_rsm(c, m) for m in ("axiom", "ec", "schedule")}
    answers = {m: v.holds for m, v in verdicts.items()}
    if len(set(answers.values())) != 1:
        raise ModeDisagreement(f"RSM formulations disagree on {c.compact()}: {answers}")
    return ModelVerdict("rsm", answers["schedule"], witness=verdicts["schedule"].witness,
                        counterexample=verdicts["axiom"].counterexample)


def check_sr(c: ChoiceFunction) -> ModelVerdict:
    sched = first_sr_schedule(c)
    return ModelVerdict("sr", sched is not None, witness=sched)


def check_cls(c: ChoiceFunction) -> ModelVerdict:
    sched = first_cls_schedule(c)
    return ModelVerdict("cls", sched is not None, witness=sched)


# -- list rationality and game trees -----------------------------------------

def lr_consistent(c: ChoiceFunction, order: LinearOrder) -> bool:
    for menu in all_menus(c.n):
        if menu_size(menu) < 3:
            continue
        x = order.worst(menu)
        if c(menu) != c(_pair(c(menu & ~(1 << x)), x)):
            return False
    return True


def check_lr(c: ChoiceFunction) -> ModelVerdict:
    for order in all_linear_orders(c.n):
        if lr_consistent(c, order):
            return ModelVerdict("lr", True, witness=order)
    return ModelVerdict("lr", False)


def ws_partition_ok(c: ChoiceFunction, b: int, d: int) -> bool:
    for s in submasks(b):
        cs = c(s)
        for t in submasks(d):
            if c(s | t) != c(_pair(cs, c(t))):
                return False
    return True


def ws_partitions(menu: int):
    """Unordered two-block partitions of ``menu``; B keeps the lowest item."""
    low = menu & -menu
    for b in submasks(menu):
        if b & low and b != menu:
            yield b, menu & ~b


def check_ws(c: ChoiceFunction) -> ModelVerdict:
    chosen: dict[int, tuple[int, int]] = {}
    for menu in all_menus(c.n):
        for b, d in ws_partitions(menu):
            if ws_partition_ok(c, b, d):
                chosen[menu] = (b, d)
                break
        else:
            return ModelVerdict("ws", False, counterexample={"A": menu})
    return ModelVerdict("ws", True, witness=WsPartitionWitness(chosen))


def cyclic_top(c: ChoiceFunction, x: int, y: int, z: int) -> bool:
    """``x o {y, z}``: c(xyz) = x and the pairwise choices on xyz form a cycle."""
    if len({x, y, z}) != 3 or c(_pair(x, y) | (1 << z)) != x:
        return False
    return {c(_pair(x, y)), c(_pair(y, z)), c(_pair(x, z))} == {x, y, z}


def dc_violation(c: ChoiceFunction, x1: int, x2: int, y1: int, y2: int) -> bool:
    if len({x1, y1, y2}) != 3 or len({y1, x1, x2}) != 3 or x2 == y2:
        return False
    if not (cyclic_top(c, x1, y1, y2) and cyclic_top(c, y1, x1, x2)):
        return False
    return (c(_pair(x1, y1)) == x1) != (c(_pair(x2, y2)) == y2)


def check_dc(c: ChoiceFunction) -> ModelVerdict:
    for x1, x2, y1, y2 in itertools.product(range(c.n), repeat=4):
        if dc_violation(c, x1, x2, y1, y2):
            return ModelVerdict(
                "dc", False, counterexample={"x1": x1, "x2": x2, "y1": y1, "y2": y2}
            )
    return ModelVerdict("dc", True)


def check_rgt(c: ChoiceFunction) -> ModelVerdict:
    ws, dc = check_ws(c), check_dc(c)
    return ModelVerdict(
        "rgt",
        ws.holds and dc.holds,
        witness=ws.witness if ws.holds and dc.holds else None,
        counterexample=dc.counterexample if ws.holds else ws.counterexample,
        parts={"ws": ws, "dc": dc},
    )


# -- status quo bias ---------------------------------------------------------

@lru_cache(maxsize=None)
def _sqb_tables(n: int) -> dict[str, dict[tuple[int, ...], SqbTriple]]:
    tables: dict[str, dict] = {"esqb": {}, "wsqb": {}}
    for order in all_linear_orders(n):
        for z in range(n):
            upper = order.upper_contour(z)
            for q in [0, *submasks(upper)]:
                for variant, table in tables.items():
                    triple = SqbTriple(variant, order, z, q)
                    picks = tuple(triple.predict(m) for m in all_menus(n))
                    table.setdefault(picks, triple)
    return tables


def check_esqb(c: ChoiceFunction) -> ModelVerdict:
    triple = _sqb_tables(c.n)["esqb"].get(c.picks)
    return ModelVerdict("esqb", triple is not None, witness=triple)


def check_wsqb(c: ChoiceFunction) -> ModelVerdict:
    triple = _sqb_tables(c.n)["wsqb"].get(c.picks)
    return ModelVerdict("wsqb", triple is not None, witness=triple)


def check_sqb(c: ChoiceFunction) -> ModelVerdict:
    e, w = check_esqb(c), check_wsqb(c)
    holds = e.holds or w.holds
    witness = SqbWitness(e.witness, w.witness) if holds else None
    return ModelVerdict("sqb", holds, witness=witness, parts={"esqb": e, "wsqb": w})


# -- limited attention -------------------------------------------------------

def list_switches(c: ChoiceFunction) -> list[Switch]:
    out = []
    for b in all_menus(c.n):
        if menu_size(b) < 3:
            continue
        after = c(b)
        for x in menu_items(b):
            before = c(b & ~(1 << x))
            if before != after and after != x:
                out.append(Switch(b, x, before, after))
    return out


CLA_MODES = ("direct", "per_menu", "order", "all")


def _cla_direct(c: ChoiceFunction) -> dict | None:
    menus = all_menus(c.n)
    for a in menus:
        for x in menu_items(a):
            if all(
                c(b) == x
                for b in menus
                if (b >> x) & 1 and (a >> c(b)) & 1 and c(b) != c(b & ~(1 << x))
            ):
                break
        else:
            return {"A": a}
    return None


def _cla_per_menu(c: ChoiceFunction, switches: list[Switch]) -> dict | None:
    for a in all_menus(c.n):
        if not any(
            not any(s.removed == x and (a >> s.after) & 1 for s in switches)
            for x in menu_items(a)
        ):
            return {"A": a}
    return None


def _cla_order(c: ChoiceFunction, switches: list[Switch]) -> LinearOrder | None:
    for order in all_linear_orders(c.n):
        pos = order.position
        if all(pos[s.after] >= pos[s.removed] for s in switches):
            return order
    return None


def check_cla(c: ChoiceFunction, mode: str = "order") -> ModelVerdict:
    if mode not in CLA_MODES:
        raise ValueError(f"unknown CLA mode {mode!r}")
    if mode == "direct":
        cex = _cla_direct(c)
        return ModelVerdict("cla", cex is None, counterexample=cex)
    switches = list_switches(c)
    if mode == "per_menu":
        cex = _cla_per_menu(c, switches)
        return ModelVerdict("cla", cex is None, counterexample=cex)
    if mode == "order":
        order = _cla_order(c, switches)
        return ModelVerdict("cla", order is not None, witness=order)
    verdicts = {m: check_cla(c, m) for m in ("direct", "per_menu", "order")}
    answers = {m: v.holds for m, v in verdicts.items()}
    if len(set(answers.values())) != 1:
        raise ModeDisagreement(f"CLA formulations disagree on {c.compact()}: {answers}")
    return ModelVerdict("cla", answers["order"], witness=verdicts["order"].witness,
                        counterexample=verdicts["direct"].counterexample)


# -- registry ----------------------------------------------------------------

DECIDERS: dict[str, Callable[[ChoiceFunction], ModelVerdict]] = {
    "rationalizable": check_rationalizable,
    "ac": check_ac,
    "wwarp": check_wwarp,
    "gamma": check_gamma,
    "ec": check_ec,
    "rsm": check_rsm,
    "sr": check_sr,
    "cls": check_cls,
    "lr": check_lr,
    "ws": check_ws,
    "dc": check_dc,
    "rgt": check_rgt,
    "esqb": check_esqb,
    "wsqb": check_wsqb,
    "sqb": check_sqb,
    "cla": check_cla,
}

MODELS = tuple(DECIDERS)
# Column order of the comparison table.
HEADLINE_MODELS = ("sqb", "lr", "rgt", "rsm", "sr", "cls", "wwarp", "cla")


def decide(c: ChoiceFunction, model: str, mode: str | None = None) -> ModelVerdict:
    try:
        fn = DECIDERS[model]
    except KeyError:
        raise ValueError(f"unknown model {model!r}") from None
    if mode is not None and model in ("rsm", "cla"):
        return fn(c, mode)
    return fn(c)
