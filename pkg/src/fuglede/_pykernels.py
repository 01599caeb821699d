"""Pure-Python reference kernels.

Bitsets are Python ints; bit ``i`` stands for group element (or candidate
row) ``i``.  The compiled module ``_kernels`` implements the same functions
with the same signatures and results.
"""

import numpy as np

EXHAUSTED, RESULT_LIMIT, BUDGET = 0, 1, 2


def mask_from_bool(flags) -> int:
    flags = np.asarray(flags, dtype=bool)
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def zero_cone_mask(points, dot, p):
    """Nonzero frequencies ``f`` on which ``{e . f : e in points}`` is equidistributed."""
    points = np.asarray(points, dtype=np.intp)
    n = len(points)
    if n == 0 or n % p:
        return 0
    vals = dot[points]
    share = n // p
    ok = np.ones(vals.shape[1], dtype=bool)
    for t in range(p):
        ok &= (vals == t).sum(axis=0) == share
    ok[0] = False
    return mask_from_bool(ok)


def direction_mask(points, sub):
    mask = 0
    for a in points:
        for b in points:
            if a != b:
                mask |= 1 << int(sub[a, b])
    return mask


class _Stop(Exception):
    pass


def find_cliques(adj, cand, k, max_nodes, max_results):
    """Cliques of size ``k`` inside ``cand``, in lexicographic order.

    Returns ``(cliques, nodes, status)`` where ``status`` is EXHAUSTED when the
    whole space was searched, RESULT_LIMIT when ``max_results`` cliques were
    found first, and BUDGET when ``max_nodes`` branch nodes were used up.
    """
    results = []
    if k <= 0:
        return [()], 0, EXHAUSTED
    nodes = 0
    clique = []

    def rec(c):
        nonlocal nodes
        need = k - len(clique)
        while c:
            if c.bit_count() < need:
                return
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            nodes += 1
            if nodes > max_nodes:
                raise _Stop(BUDGET)
            clique.append(v)
            if need == 1:
                results.append(tuple(clique))
                if len(results) >= max_results:
                    raise _Stop(RESULT_LIMIT)
            else:
                rec(c & adj[v])
            clique.pop()

    try:
        rec(cand)
    except _Stop as stop:
        return results, min(nodes, max_nodes), stop.args[0]
    return results, nodes, EXHAUSTED


def complete_mappings(p):
    """Bijections psi of Z_p with psi(0)=0 and x -> psi(x)-x also bijective."""
    out = []
    psi = [0] * p
    used = [False] * p
    diff_used = [False] * p
    used[0] = diff_used[0] = True

    def rec(x):
        if x == p:
            out.append(tuple(psi))
            return
        for y in range(1, p):
            if used[y]:
                continue
            dd = (y - x) % p
            if diff_used[dd]:
                continue
            used[y] = diff_used[dd] = True
            psi[x] = y
            rec(x + 1)
            used[y] = diff_used[dd] = False

    rec(1)
    return out


def balanced_adjacency(rows, p):
    """Bitset per row: the rows whose difference with it is balanced."""
    rows = np.asarray(rows, dtype=np.int64)
    n, length = rows.shape
    share = length // p
    adj = []
    for i in range(n):
        diff = (rows - rows[i]) % p
        ok = np.ones(n, dtype=bool)
        for t in range(p):
            ok &= (diff == t).sum(axis=1) == share
        ok[i] = False
        adj.append(mask_from_bool(ok))
    return adj
