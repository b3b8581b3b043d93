"""Pure-Python implementations of the hot loops.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built or ``NILAUT_PURE_PYTHON`` is set.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def element_orders(table, identity):
    n = table.shape[0]
    t = table.tolist()
    out = np.zeros(n, dtype=np.int64)
    for x in range(n):
        k, y = 1, x
        while y != identity:
            y = t[y][x]
            k += 1
        out[x] = k
    return out


def closure(table, gens, identity):
    """Boolean mask of the subgroup generated by ``gens``."""
    n = table.shape[0]
    t = table.tolist()
    gens = [g for g in dict.fromkeys(int(g) for g in gens) if g != identity]
    mask = [False] * n
    mask[identity] = True
    queue = [identity]
    while queue:
        x = queue.pop()
        row = t[x]
        for g in gens:
            y = row[g]
            if not mask[y]:
                mask[y] = True
                queue.append(y)
    return np.array(mask, dtype=bool)


def enumerate_tuples(table, inverse, identity, hyper_count, cands, last_mask):
    """All generator-image tuples satisfying the long relation.

    ``cands`` holds one candidate array per free slot: ``2*hyper_count``
    hyperbolic slots followed by the first ``l-1`` elliptic slots.  When
    ``last_mask`` is given the last elliptic image is forced to the inverse
    of the running product and must satisfy the mask; otherwise the product
    itself must be the identity.
    """
    t = table.tolist()
    inv = inverse.tolist()
    cand_lists = [list(map(int, c)) for c in cands]
    nslots = len(cand_lists)
    lm = None if last_mask is None else last_mask.tolist()
    out = []
    if any(len(c) == 0 for c in cand_lists):
        return _pack(out, nslots + (lm is not None))
    npairs = 2 * hyper_count
    choice = [0] * nslots
    prefix = [identity] * (nslots + 1)
    depth = 0
    while depth >= 0:
        if depth == nslots:
            p = prefix[nslots]
            if lm is None:
                if p == identity:
                    out.append(tuple(cand_lists[i][choice[i]] for i in range(nslots)))
            else:
                last = inv[p]
                if lm[last]:
                    out.append(tuple(cand_lists[i][choice[i]] for i in range(nslots)) + (last,))
            depth -= 1
            if depth >= 0:
                choice[depth] += 1
            continue
        if choice[depth] >= len(cand_lists[depth]):
            choice[depth] = 0
            depth -= 1
            if depth >= 0:
                choice[depth] += 1
            continue
        g = cand_lists[depth][choice[depth]]
        base = prefix[depth]
        if depth < npairs and depth % 2 == 1:
            x = cand_lists[depth - 1][choice[depth - 1]]
            base = prefix[depth - 1]
            comm = t[t[t[x][g]][inv[x]]][inv[g]]
            prefix[depth + 1] = t[base][comm]
        elif depth < npairs:
            prefix[depth + 1] = base
        else:
            prefix[depth + 1] = t[base][g]
        depth += 1
    return _pack(out, nslots + (lm is not None))


def _pack(rows, width):
    if not rows:
        return np.zeros((0, width), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def extend_hom(src_table, tgt_table, gens, images, src_identity, tgt_identity):
    """Extend generator images to a homomorphism on ``<gens>``.

    Returns an int64 array indexed by source element (-1 outside the
    subgroup) or None when the assignment is inconsistent.
    """
    st = src_table.tolist()
    tt = tgt_table.tolist()
    n = src_table.shape[0]
    phi = [-1] * n
    phi[src_identity] = tgt_identity
    pairs = [(int(g), int(h)) for g, h in zip(gens, images)]
    queue = [src_identity]
    while queue:
        x = queue.pop()
        fx = phi[x]
        srow = st[x]
        trow = tt[fx]
        for g, h in pairs:
            y = srow[g]
            fy = trow[h]
            cur = phi[y]
            if cur < 0:
                phi[y] = fy
                queue.append(y)
            elif cur != fy:
                return None
    return np.array(phi, dtype=np.int64)
