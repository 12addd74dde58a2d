"""Pure-Python schedule replay, used when the compiled kernel is unavailable."""
import numpy as np


def apply_schedules(menus, winners, losers, assign, nblocks):
    """Replay every stage assignment on every menu.

    ``assign[p, e]`` is the stage of edge ``e = (winners[e], losers[e])`` in
    schedule ``p``, which has ``nblocks[p]`` stages.  Entry ``[p, m]`` of the
    result is the sole survivor of menu ``m``, or -1 if zero or several items
    survive.
    """
    menus = [int(x) for x in menus]
    edges = list(zip((int(w) for w in winners), (int(l) for l in losers)))
    out = []
    for row, k in zip(np.asarray(assign).tolist(), np.asarray(nblocks).tolist()):
        stages = [[] for _ in range(k)]
        for (w, l), s in zip(edges, row):
            stages[s].append((1 << w, w, l))
        picks = []
        for surv in menus:
            for stage in stages:
                if not surv & (surv - 1):
                    break
                dom = 0
                for wbit, w, l in stage:
                    if surv & wbit and (surv >> l) & 1:
                        dom |= 1 << l
                surv &= ~dom
            if surv and not surv & (surv - 1):
                picks.append(surv.bit_length() - 1)
            else:
                picks.append(-1)
        out.append(picks)
    return np.array(out, dtype=np.int64).reshape(len(out), len(menus))
