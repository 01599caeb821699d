"""Davey matrices: p x p nonnegative integer matrices with constant row,
column and wrapped-diagonal sums.

The s-diagonal is ``{(i, i + s mod p)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, NotBalanced, NotDecomposable, UnsupportedPrime
from .field import check_prime
from .fourier import is_balanced

# The three involutions of Z_3 as permutation matrices.
SIGMA3 = (
    ((0, 1, 0), (1, 0, 0), (0, 0, 1)),
    ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
    ((1, 0, 0), (0, 0, 1), (0, 1, 0)),
)

MAX_ENUMERATION_WEIGHT = 12


@dataclass(frozen=True)
class DaveyMatrix:
    p: int
    weight: int
    entries: tuple

    def __add__(self, other: "DaveyMatrix") -> "DaveyMatrix":
        if self.p != other.p:
            raise ValueError("different sizes")
        rows = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries))
        return DaveyMatrix(self.p, self.weight + other.weight, rows)

    def to_lists(self):
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class DaveyCheck:
    is_davey: bool
    weight: int | None
    violation: tuple | None   # ("entry", i, j) | ("row", i, sum) | ("col", j, sum) | ("diag", s, sum)

    def __bool__(self):
        return self.is_davey


def _sums(X, p):
    rows = [sum(X[i]) for i in range(p)]
    cols = [sum(X[i][j] for i in range(p)) for j in range(p)]
    diags = [sum(X[i][(i + s) % p] for i in range(p)) for s in range(p)]
    return rows, cols, diags


def is_davey(X: Sequence[Sequence[int]]) -> DaveyCheck:
    p = len(X)
    if p == 0 or any(len(r) != p for r in X):
        raise ValueError("Davey matrices are square and nonempty")
    for i in range(p):
        for j in range(p):
            if X[i][j] < 0:
                return DaveyCheck(False, None, ("entry", i, j))
    rows, cols, diags = _sums(X, p)
    m = rows[0]
    for kind, sums in (("row", rows), ("col", cols), ("diag", diags)):
        for k, s in enumerate(sums):
            if s != m:
                return DaveyCheck(False, None, (kind, k, s))
    return DaveyCheck(True, m, None)


def as_davey(X: Sequence[Sequence[int]]) -> DaveyMatrix:
    chk = is_davey(X)
    if not chk:
        raise NotDecomposable(f"not a Davey matrix: {chk.violation}")
    return DaveyMatrix(len(X), chk.weight, tuple(tuple(int(x) for x in r) for r in X))


def davey_from_rows(x: Sequence[int], y: Sequence[int], p: int) -> DaveyMatrix:
    """``X[i][j]`` counts positions where ``y`` holds ``i`` below an ``x`` holding ``j``."""
    check_prime(p)
    if len(x) != len(y):
        raise NotBalanced("rows have different lengths")
    x = [a % p for a in x]
    y = [b % p for b in y]
    for name, v in (("x", x), ("y", y), ("x - y", [a - b for a, b in zip(x, y)])):
        if not is_balanced(v, p):
            raise NotBalanced(f"{name} is not balanced")
    X = [[0] * p for _ in range(p)]
    for a, b in zip(x, y):
        X[b][a] += 1
    out = DaveyMatrix(p, len(x) // p, tuple(map(tuple, X)))
    chk = is_davey(out.entries)
    if not chk or chk.weight != out.weight:
        raise AssertionError("row pair produced a non-Davey matrix")
    return out


@dataclass(frozen=True)
class DaveyDecomposition:
    p: int
    weight: int
    coefficients: tuple   # (l,) for p = 2; (s1, s2, s3) for p = 3

    def reconstruct(self) -> tuple:
        if self.p == 2:
            (l,) = self.coefficients
            return ((l, l), (l, l))
        return tuple(tuple(sum(s * S[i][j] for s, S in zip(self.coefficients, SIGMA3)) for j in range(3))
                     for i in range(3))


def decompose_davey(X) -> DaveyDecomposition:
    """Write a Davey matrix as a combination of the minimal ones.

    p = 2: ``X = l * ones``.  p = 3: ``X = s1 sigma1 + s2 sigma2 + s3 sigma3``,
    read off from row 0 and checked by reconstruction.
    """
    D = X if isinstance(X, DaveyMatrix) else as_davey(X)
    E = D.entries
    if D.p == 2:
        if D.weight % 2:
            raise NotDecomposable(f"odd weight {D.weight}")
        out = DaveyDecomposition(2, D.weight, (D.weight // 2,))
    elif D.p == 3:
        out = DaveyDecomposition(3, D.weight, (E[0][1], E[0][2], E[0][0]))
    else:
        raise UnsupportedPrime(f"decomposition is only supported for p = 2, 3 (got {D.p})")
    if out.reconstruct() != E:
        raise NotDecomposable("reconstruction does not match")
    return out


def triplet_rule_check(x: Sequence[int], y: Sequence[int]) -> bool:
    """Over Z_3: for {i, j, k} = {0, 1, 2}, (x,y) = (i,j), (j,i), (k,k) occur equally often."""
    count = {}
    for a, b in zip(x, y):
        key = (a % 3, b % 3)
        count[key] = count.get(key, 0) + 1
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        if not count.get((i, j), 0) == count.get((j, i), 0) == count.get((k, k), 0):
            return False
    return True


def enumerate_davey(p: int, m: int, max_nodes: int = 10**7) -> list[DaveyMatrix]:
    """All weight-``m`` Davey matrices, in lexicographic order of their entries."""
    check_prime(p)
    if p > 5:
        raise UnsupportedPrime(f"enumeration supports p <= 5 (got {p})")
    if m < 0 or m > MAX_ENUMERATION_WEIGHT:
        raise ValueError(f"weight must lie in [0, {MAX_ENUMERATION_WEIGHT}]")
    X = [[0] * p for _ in range(p)]
    col = [m] * p
    diag = [m] * p
    out = []
    nodes = 0

    def rec(i, j, row_left):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded(f"Davey enumeration stopped after {max_nodes} nodes", max_nodes)
        if i == p:
            out.append(DaveyMatrix(p, m, tuple(map(tuple, X))))
            return
        s = (j - i) % p
        cap = min(row_left, col[j], diag[s])
        if j == p - 1 or i == p - 1:
            # forced by the row sum or the column sum
            v = row_left if j == p - 1 else col[j]
            if v > cap or (i == p - 1 and v != col[j]):
                return
            choices = (v,)
        else:
            choices = range(cap + 1)
        for v in choices:
            X[i][j] = v
            col[j] -= v
            diag[s] -= v
            if j == p - 1:
                rec(i + 1, 0, m)
            else:
                rec(i, j + 1, row_left - v)
            col[j] += v
            diag[s] += v
        X[i][j] = 0

    rec(0, 0, m)
    for D in out:
        if not is_davey(D.entries):
            raise AssertionError("enumeration produced a non-Davey matrix")
    return out


def permutation_decomposition(X: Sequence[Sequence[int]]) -> list[tuple]:
    """Split a nonnegative matrix with all row and column sums ``m`` into
    ``m`` permutations (as tuples ``perm[i] = column``) by repeatedly
    extracting a perfect matching of the support."""
    n = len(X)
    R = [list(r) for r in X]
    m = sum(R[0]) if n else 0
    if any(sum(r) != m for r in R) or any(sum(R[i][j] for i in range(n)) != m for j in range(n)):
        raise NotDecomposable("row and column sums are not all equal")
    perms = []
    for _ in range(m):
        match_col = [-1] * n

        def augment(i, seen):
            for j in range(n):
                if R[i][j] > 0 and not seen[j]:
                    seen[j] = True
                    if match_col[j] < 0 or augment(match_col[j], seen):
                        match_col[j] = i
                        return True
            return False

        for i in range(n):
            if not augment(i, [False] * n):
                raise NotDecomposable("support has no perfect matching")
        perm = [0] * n
        for j, i in enumerate(match_col):
            perm[i] = j
            R[i][j] -= 1
        perms.append(tuple(perm))
    return perms
