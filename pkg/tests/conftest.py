import itertools

import numpy as np
import pytest

from fuglede.field import PointSet, ResidueMatrix, all_elements


def pts(p, d, points):
    return PointSet.homogeneous(p, d, points)


def brute_rank(M: ResidueMatrix) -> int:
    """Rank from the size of the row space, found by enumerating combinations."""
    p = M.p
    span = set()
    for coeffs in itertools.product(range(p), repeat=M.nrows):
        span.add(tuple(sum(c * r[j] for c, r in zip(coeffs, M.rows)) % p for j in range(M.ncols)))
    r = 0
    while p ** r < len(span):
        r += 1
    assert p ** r == len(span)
    return r


def naive_rank(M: ResidueMatrix) -> int:
    """Textbook elimination on plain lists, kept separate from the library code."""
    p = M.p
    rows = [[x % p for x in r] for r in M.rows]
    rank = 0
    for c in range(M.ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] * inv % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def brute_tiles(E: PointSet, A: PointSet) -> bool:
    sums = [tuple((x + y) % m for x, y, m in zip(e, a, E.moduli)) for e in E for a in A]
    return len(sums) == E.order and len(set(sums)) == E.order


def complex_hadamard(rows, p) -> bool:
    """exp(2 pi i L / p) has orthogonal rows, in floating point."""
    M = np.exp(2j * np.pi * np.array(rows, dtype=float) / p)
    n = len(rows)
    return M.shape == (n, n) and np.allclose(M @ M.conj().T, n * np.eye(n), atol=1e-9)


def brute_ft_zero(E: PointSet, m) -> bool:
    return abs(sum(np.exp(-2j * np.pi * sum(a * b for a, b in zip(e, m)) / E.p) for e in E)) < 1e-9


def naive_fuglede_counts(p, d):
    """Per-size tiling and spectral counts over sets containing 0, by exhaustive pairing."""
    elements = all_elements((p,) * d)
    zero = (0,) * d
    others = [e for e in elements if e != zero]
    N = len(elements)
    sets_by_size = {s: [PointSet((p,) * d, (zero,) + c) for c in itertools.combinations(others, s - 1)]
                    for s in range(1, N + 1)}
    out = {}
    for s, sets in sets_by_size.items():
        tiling = spectral = 0
        partners = sets_by_size.get(N // s, []) if N % s == 0 else []
        for E in sets:
            tiling += any(brute_tiles(E, A) for A in partners)
            pts = np.array(E.points)
            ok = False
            for B in sets:
                M = np.exp(2j * np.pi * (pts @ np.array(B.points).T) / p)
                if np.allclose(M @ M.conj().T, s * np.eye(s)):
                    ok = True
                    break
            spectral += ok
        out[s] = (len(sets), tiling, spectral)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


REFERENCE_6X6 = (
    (0, 0, 0, 0, 0, 0),
    (0, 1, 2, 0, 1, 2),
    (0, 2, 1, 1, 0, 2),
    (0, 0, 2, 1, 2, 1),
    (0, 1, 1, 2, 2, 0),
    (0, 2, 0, 2, 1, 1),
)
