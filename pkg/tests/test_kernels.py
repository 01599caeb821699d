import itertools

import numpy as np
import pytest

from fuglede import _pykernels, kernels
from fuglede.field import PointSet, group_tables
from fuglede.fourier import zero_flags

try:
    from fuglede import _kernels as compiled
except ImportError:
    compiled = None


def random_graph(n, density, rng):
    A = rng.random((n, n)) < density
    A = np.triu(A, 1)
    A = A | A.T
    return [_pykernels.mask_from_bool(A[i]) for i in range(n)], A


def oracle_cliques(A, k):
    n = len(A)
    return [c for c in itertools.combinations(range(n), k) if all(A[a, b] for a, b in itertools.combinations(c, 2))]


@pytest.mark.parametrize("backend", [_pykernels] + ([compiled] if compiled else []),
                         ids=lambda b: b.__name__.rsplit(".", 1)[-1])
def test_cliques_match_itertools(backend, rng):
    for _ in range(25):
        n = int(rng.integers(4, 14))
        adj, A = random_graph(n, 0.6, rng)
        k = int(rng.integers(1, 5))
        found, _, status = backend.find_cliques(adj, (1 << n) - 1, k, 10**6, 10**6)
        assert list(found) == oracle_cliques(A, k)
        assert status == _pykernels.EXHAUSTED


def test_clique_limits(rng):
    adj, _ = random_graph(12, 0.9, rng)
    found, _, status = kernels.find_cliques(adj, (1 << 12) - 1, 3, 10**6, 2)
    assert len(found) == 2 and status == kernels.RESULT_LIMIT
    _, nodes, status = kernels.find_cliques(adj, (1 << 12) - 1, 6, 10, 10**6)
    assert status == kernels.BUDGET and nodes <= 10


@pytest.mark.skipif(compiled is None, reason="compiled extension not built")
def test_backends_agree(rng):
    for p, d in ((3, 2), (2, 4), (5, 2), (3, 3)):
        t = group_tables(p, d)
        for _ in range(10):
            size = int(rng.integers(1, t.size))
            pts = sorted(rng.choice(t.size, size=size, replace=False).tolist())
            assert compiled.zero_cone_mask(pts, t.dot, p) == _pykernels.zero_cone_mask(pts, t.dot, p)
            assert compiled.direction_mask(pts, t.sub) == _pykernels.direction_mask(pts, t.sub)
        rows = rng.integers(0, p, size=(30, 2 * p)).tolist()
        assert compiled.balanced_adjacency(rows, p) == _pykernels.balanced_adjacency(rows, p)
    for p in (3, 5, 7):
        assert sorted(compiled.complete_mappings(p)) == sorted(_pykernels.complete_mappings(p))


def test_zero_cone_mask_matches_fourier(rng):
    p, d = 3, 3
    t = group_tables(p, d)
    for _ in range(10):
        pts = sorted(rng.choice(t.size, size=int(rng.integers(1, 12)), replace=False).tolist())
        E = PointSet((p,) * d, tuple(t.point(i) for i in pts))
        flags = zero_flags(E)
        mask = kernels.zero_cone_mask(pts, t.dot, p)
        for i in range(1, t.size):
            assert bool(mask >> i & 1) == flags[t.point(i)]


def test_difference_graph():
    t = group_tables(3, 2)
    allowed = sum(1 << t.index(v) for v in ((1, 0), (2, 0)))
    adj = kernels.difference_graph(t, allowed)
    for x in range(t.size):
        nbrs = {t.point(y) for y in kernels.bits(adj[x])}
        a = t.point(x)
        assert nbrs == {((a[0] + s) % 3, a[1]) for s in (1, 2)}


def test_bits():
    assert list(kernels.bits(0b101001)) == [0, 3, 5]
    assert list(kernels.bits(0)) == []
