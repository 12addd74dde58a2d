# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled schedule replay; same contract as ``_pykernels.apply_schedules``."""
import numpy as np

ctypedef long long i64


def apply_schedules(const i64[:] menus, const i64[:] winners, const i64[:] losers,
                    const i64[:, :] assign, const i64[:] nblocks):
    cdef Py_ssize_t P = assign.shape[0]
    cdef Py_ssize_t E = assign.shape[1]
    cdef Py_ssize_t M = menus.shape[0]
    out = np.empty((P, M), dtype=np.int64)
    cdef i64[:, :] res = out
    cdef Py_ssize_t p, m, e
    cdef i64 s, k, surv, dom, w, l, item
    for p in range(P):
        k = nblocks[p]
        for m in range(M):
            surv = menus[m]
            s = 0
            while s < k and (surv & (surv - 1)) != 0:
                dom = 0
                for e in range(E):
                    if assign[p, e] == s:
                        w = winners[e]
                        l = losers[e]
                        if (surv >> w) & 1 and (surv >> l) & 1:
                            dom |= (<i64>1) << l
                surv &= ~dom
                s += 1
            if surv != 0 and (surv & (surv - 1)) == 0:
                item = 0
                while not (surv >> item) & 1:
                    item += 1
                res[p, m] = item
            else:
                res[p, m] = -1
    return out
