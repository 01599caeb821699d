# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the search kernels in ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

cnp.import_array()

DEF EXHAUSTED = 0
DEF RESULT_LIMIT = 1
DEF BUDGET = 2


cdef inline int popcount64(uint64_t x) nogil:
    return __builtin_popcountll(x)

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef object _words_to_int(uint64_t* words, int nwords):
    cdef int w
    out = 0
    for w in range(nwords - 1, -1, -1):
        out = (out << 64) | words[w]
    return out


cdef void _int_to_words(object value, uint64_t* words, int nwords):
    cdef int w
    mask = (1 << 64) - 1
    for w in range(nwords):
        words[w] = <uint64_t>(value & mask)
        value >>= 64


def mask_from_bool(flags):
    flags = np.asarray(flags, dtype=bool)
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def zero_cone_mask(points, cnp.ndarray dot, int p):
    cdef cnp.intp_t[::1] pts = np.ascontiguousarray(points, dtype=np.intp)
    cdef const unsigned char[:, ::1] dt = np.ascontiguousarray(dot, dtype=np.uint8)
    cdef Py_ssize_t n = pts.shape[0], size = dt.shape[1], f, k
    cdef int t, share
    cdef int counts[256]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] ok
    if n == 0 or n % p:
        return 0
    share = n // p
    ok = np.zeros(size, dtype=np.uint8)
    for f in range(1, size):
        for t in range(p):
            counts[t] = 0
        for k in range(n):
            counts[dt[pts[k], f]] += 1
        for t in range(p):
            if counts[t] != share:
                break
        else:
            ok[f] = 1
    return mask_from_bool(ok)


def direction_mask(points, cnp.ndarray sub):
    cdef cnp.intp_t[::1] pts = np.ascontiguousarray(points, dtype=np.intp)
    cdef const int[:, ::1] sb = np.ascontiguousarray(sub, dtype=np.int32)
    cdef Py_ssize_t n = pts.shape[0], a, b
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] hit = np.zeros(sb.shape[0], dtype=np.uint8)
    for a in range(n):
        for b in range(n):
            if a != b:
                hit[sb[pts[a], pts[b]]] = 1
    return mask_from_bool(hit)


cdef struct CliqueState:
    uint64_t* adj        # nvert * nwords
    uint64_t* cand       # (k + 1) * nwords, one candidate set per depth
    int* clique
    int nwords
    int k
    int64_t nodes
    int64_t max_nodes
    int status


cdef int _rec(CliqueState* st, int depth, list results, int64_t max_results):
    # Returns 1 to stop the whole search.
    cdef int nw = st.nwords, need = st.k - depth, w, v, total
    cdef uint64_t* c = st.cand + depth * nw
    cdef uint64_t* nxt = st.cand + (depth + 1) * nw
    cdef uint64_t* row
    cdef uint64_t low
    while True:
        total = 0
        for w in range(nw):
            total += popcount64(c[w])
        if total < need:
            return 0
        w = 0
        while c[w] == 0:
            w += 1
        low = c[w] & (~c[w] + 1)
        v = w * 64 + __builtin_ctzll(c[w])
        c[w] ^= low
        st.nodes += 1
        if st.nodes > st.max_nodes:
            st.nodes = st.max_nodes
            st.status = BUDGET
            return 1
        st.clique[depth] = v
        if need == 1:
            results.append(tuple([st.clique[i] for i in range(depth + 1)]))
            if len(results) >= max_results:
                st.status = RESULT_LIMIT
                return 1
        else:
            row = st.adj + v * nw
            for w in range(nw):
                nxt[w] = c[w] & row[w]
            if _rec(st, depth + 1, results, max_results):
                return 1


def find_cliques(adj, cand, int k, int64_t max_nodes, int64_t max_results):
    cdef int nvert = len(adj), i
    cdef CliqueState st
    results = []
    if k <= 0:
        return [()], 0, EXHAUSTED
    top = max([a.bit_length() for a in adj] + [cand.bit_length(), nvert, 1])
    st.nwords = (top + 63) // 64
    st.k = k
    st.nodes = 0
    st.max_nodes = max_nodes
    st.status = EXHAUSTED
    st.adj = <uint64_t*>malloc(max(nvert, 1) * st.nwords * sizeof(uint64_t))
    st.cand = <uint64_t*>malloc((k + 1) * st.nwords * sizeof(uint64_t))
    st.clique = <int*>malloc(k * sizeof(int))
    try:
        for i in range(nvert):
            _int_to_words(adj[i], st.adj + i * st.nwords, st.nwords)
        _int_to_words(cand, st.cand, st.nwords)
        _rec(&st, 0, results, max_results)
    finally:
        free(st.adj)
        free(st.cand)
        free(st.clique)
    return results, st.nodes, st.status


cdef void _cm_rec(int x, int p, int* psi, char* used, char* dused, list out):
    cdef int y, dd
    if x == p:
        out.append(tuple([psi[i] for i in range(p)]))
        return
    for y in range(1, p):
        if used[y]:
            continue
        dd = (y - x + p) % p
        if dused[dd]:
            continue
        used[y] = 1
        dused[dd] = 1
        psi[x] = y
        _cm_rec(x + 1, p, psi, used, dused, out)
        used[y] = 0
        dused[dd] = 0


def complete_mappings(int p):
    cdef int psi[64]
    cdef char used[64]
    cdef char dused[64]
    if p > 64:
        raise ValueError("p too large")
    memset(psi, 0, sizeof(psi))
    memset(used, 0, sizeof(used))
    memset(dused, 0, sizeof(dused))
    used[0] = 1
    dused[0] = 1
    out = []
    _cm_rec(1, p, psi, used, dused, out)
    return out


def balanced_adjacency(rows, int p):
    cdef const int64_t[:, ::1] r = np.ascontiguousarray(rows, dtype=np.int64)
    cdef Py_ssize_t n = r.shape[0], length = r.shape[1], i, j, c
    cdef int share = length // p, t
    cdef int counts[256]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] ok
    adj = []
    for i in range(n):
        ok = np.zeros(n, dtype=np.uint8)
        for j in range(n):
            if j == i:
                continue
            for t in range(p):
                counts[t] = 0
            for c in range(length):
                counts[(r[j, c] - r[i, c] + p) % p] += 1
            for t in range(p):
                if counts[t] != share:
                    break
            else:
                ok[j] = 1
        adj.append(mask_from_bool(ok))
    return adj
