# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; mirrors ``_pykernels`` exactly."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def element_orders(table, Py_ssize_t identity):
    cdef const cnp.int64_t[:, ::1] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0]
    out = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] o = out
    cdef Py_ssize_t x, y, k
    for x in range(n):
        k = 1
        y = x
        while y != identity:
            y = t[y, x]
            k += 1
        o[x] = k
    return out


def closure(table, gens, Py_ssize_t identity):
    cdef const cnp.int64_t[:, ::1] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0]
    glist = [g for g in dict.fromkeys(int(g) for g in gens) if g != identity]
    cdef const cnp.int64_t[::1] gv = np.array(glist, dtype=np.int64) if glist else np.zeros(0, dtype=np.int64)
    cdef Py_ssize_t ng = gv.shape[0]
    mask = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] m = mask
    cdef cnp.int64_t[::1] queue = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t top = 0, x, y, i
    m[identity] = 1
    queue[0] = identity
    top = 1
    while top > 0:
        top -= 1
        x = queue[top]
        for i in range(ng):
            y = t[x, gv[i]]
            if not m[y]:
                m[y] = 1
                queue[top] = y
                top += 1
    return mask.astype(bool)


def enumerate_tuples(table, inverse, Py_ssize_t identity, Py_ssize_t hyper_count, cands, last_mask):
    cdef const cnp.int64_t[:, ::1] t = np.ascontiguousarray(table, dtype=np.int64)
    cdef const cnp.int64_t[::1] inv = np.ascontiguousarray(inverse, dtype=np.int64)
    cdef Py_ssize_t nslots = len(cands)
    cdef bint forced = last_mask is not None
    cdef Py_ssize_t width = nslots + (1 if forced else 0)
    cdef Py_ssize_t i
    for c in cands:
        if len(c) == 0:
            return np.zeros((0, width), dtype=np.int64)
    if nslots == 0:
        return _finish_empty(identity, inv, last_mask, forced, width)
    sizes_np = np.array([len(c) for c in cands], dtype=np.int64)
    maxlen = int(sizes_np.max())
    flat_np = np.zeros((nslots, maxlen), dtype=np.int64)
    for i in range(nslots):
        flat_np[i, : len(cands[i])] = np.asarray(cands[i], dtype=np.int64)
    cdef const cnp.int64_t[:, ::1] flat = flat_np
    cdef const cnp.int64_t[::1] sizes = sizes_np
    cdef const cnp.uint8_t[::1] lm
    if forced:
        lm = np.ascontiguousarray(last_mask, dtype=np.uint8)
    cdef cnp.int64_t[::1] choice = np.zeros(nslots, dtype=np.int64)
    cdef cnp.int64_t[::1] prefix = np.full(nslots + 1, identity, dtype=np.int64)
    cdef Py_ssize_t npairs = 2 * hyper_count
    cdef Py_ssize_t depth = 0, g, x, base, comm, p, last
    out = []
    while depth >= 0:
        if depth == nslots:
            p = prefix[nslots]
            if not forced:
                if p == identity:
                    out.append([flat[i, choice[i]] for i in range(nslots)])
            else:
                last = inv[p]
                if lm[last]:
                    row = [flat[i, choice[i]] for i in range(nslots)]
                    row.append(last)
                    out.append(row)
            depth -= 1
            if depth >= 0:
                choice[depth] += 1
            continue
        if choice[depth] >= sizes[depth]:
            choice[depth] = 0
            depth -= 1
            if depth >= 0:
                choice[depth] += 1
            continue
        g = flat[depth, choice[depth]]
        if depth < npairs and depth % 2 == 1:
            x = flat[depth - 1, choice[depth - 1]]
            base = prefix[depth - 1]
            comm = t[t[t[x, g], inv[x]], inv[g]]
            prefix[depth + 1] = t[base, comm]
        elif depth < npairs:
            prefix[depth + 1] = prefix[depth]
        else:
            prefix[depth + 1] = t[prefix[depth], g]
        depth += 1
    if not out:
        return np.zeros((0, width), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def _finish_empty(identity, inv, last_mask, forced, width):
    if not forced:
        return np.zeros((1, 0), dtype=np.int64)
    last = int(inv[identity])
    if last_mask[last]:
        return np.array([[last]], dtype=np.int64)
    return np.zeros((0, width), dtype=np.int64)


def extend_hom(src_table, tgt_table, gens, images, Py_ssize_t src_identity, Py_ssize_t tgt_identity):
    cdef const cnp.int64_t[:, ::1] st = np.ascontiguousarray(src_table, dtype=np.int64)
    cdef const cnp.int64_t[:, ::1] tt = np.ascontiguousarray(tgt_table, dtype=np.int64)
    cdef Py_ssize_t n = st.shape[0]
    cdef cnp.int64_t[::1] gv = np.array(list(gens), dtype=np.int64).reshape(-1)
    cdef cnp.int64_t[::1] hv = np.array(list(images), dtype=np.int64).reshape(-1)
    cdef Py_ssize_t k = gv.shape[0]
    phi_np = np.full(n, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] phi = phi_np
    cdef cnp.int64_t[::1] queue = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t top, x, fx, y, fy, i
    phi[src_identity] = tgt_identity
    queue[0] = src_identity
    top = 1
    while top > 0:
        top -= 1
        x = queue[top]
        fx = phi[x]
        for i in range(k):
            y = st[x, gv[i]]
            fy = tt[fx, hv[i]]
            if phi[y] < 0:
                phi[y] = fy
                queue[top] = y
                top += 1
            elif phi[y] != fy:
                return None
    return phi_np
