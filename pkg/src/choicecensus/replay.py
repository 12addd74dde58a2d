"""Independent reconstruction of a choice from a verdict's witness."""
from __future__ import annotations

from .core import ChoiceFunction, all_menus, menu_size
from .deciders import (
    ModelVerdict,
    SqbTriple,
    SqbWitness,
    WsPartitionWitness,
    list_switches,
    ws_partition_ok,
)
from .relations import LinearOrder, RationaleSchedule, sequential_apply


def replay_order(c: ChoiceFunction, order: LinearOrder) -> bool:
    return all(order.best(m) == c(m) for m in all_menus(c.n))


def replay_list(c: ChoiceFunction, order: LinearOrder) -> bool:
    """Rebuild c from its binary choices by the list recursion."""
    rebuilt: dict[int, int] = {}

    def pick(menu: int) -> int:
        if menu & (menu - 1) == 0:
            return menu.bit_length() - 1
        if menu_size(menu) == 2:
            return c(menu)
        if menu not in rebuilt:
            x = order.worst(menu)
            rebuilt[menu] = pick((1 << pick(menu & ~(1 << x))) | (1 << x))
        return rebuilt[menu]

    return all(pick(m) == c(m) for m in all_menus(c.n))


def replay_schedule(c: ChoiceFunction, schedule: RationaleSchedule) -> bool:
    return all(sequential_apply(m, schedule) == 1 << c(m) for m in all_menus(c.n))


def replay_sqb_triple(c: ChoiceFunction, triple: SqbTriple) -> bool:
    if triple.q_set & ~triple.order.upper_contour(triple.status_quo):
        return False
    return all(triple.predict(m) == c(m) for m in all_menus(c.n))


def replay_ws(c: ChoiceFunction, witness: WsPartitionWitness) -> bool:
    for menu in all_menus(c.n):
        if menu not in witness.partitions:
            return False
        b, d = witness.partitions[menu]
        if not b or not d or b & d or b | d != menu or not ws_partition_ok(c, b, d):
            return False
    return True


def replay_attention_order(c: ChoiceFunction, order: LinearOrder) -> bool:
    return not any(order.above(s.after, s.removed) for s in list_switches(c))


def replay(c: ChoiceFunction, verdict: ModelVerdict) -> bool:
    """True if the witness reproduces ``c``; vacuously true without one."""
    w = verdict.witness
    if not verdict.holds or w is None:
        return True
    model = verdict.model
    if model == "rationalizable":
        return replay_order(c, w)
    if model == "lr":
        return replay_list(c, w)
    if model in ("sr", "cls", "rsm"):
        ok = replay_schedule(c, w)
        if model == "cls":
            ok = ok and w.blocks_acyclic()
        if model == "rsm":
            ok = ok and len(w) <= 2
        return ok
    if model in ("esqb", "wsqb"):
        return w.variant == model and replay_sqb_triple(c, w)
    if model == "sqb":
        assert isinstance(w, SqbWitness)
        return all(replay_sqb_triple(c, t) for t in (w.esqb, w.wsqb) if t is not None)
    if model in ("ws", "rgt"):
        return replay_ws(c, w)
    if model == "cla":
        return replay_attention_order(c, w)
    raise ValueError(f"no replay routine for model {model!r}")
