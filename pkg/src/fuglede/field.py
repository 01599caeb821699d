"""Exact arithmetic mod p: vectors, point sets, matrices and subspaces.

Everything here is immutable and uses plain Python integers, so results are
exact.  Points of a group are tuples of residues; the group itself is given by
its per-coordinate moduli, which covers both ``Z_p^d`` and product groups
such as ``Z_p^d x Z_m``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    DimensionMismatch,
    FugledeError,
    NoNonsquare,
    NotPrime,
    SingularMatrix,
)

Vector = tuple  # tuple[int, ...]

DEFAULT_ENUMERATION_BUDGET = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    """Return ``p`` unchanged, raising :class:`NotPrime` if it is not prime."""
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise NotPrime(f"{p!r} is not a prime")
    return int(p)


def find_nonsquare(p: int) -> int:
    """Smallest ``n`` in ``[2, p)`` that is not a square mod ``p``."""
    check_prime(p)
    if p == 2:
        raise NoNonsquare("every residue mod 2 is a square")
    half = (p - 1) // 2
    for n in range(2, p):
        if pow(n, half, p) == p - 1:
            return n
    raise AssertionError("unreachable: half of Z_p^* are nonsquares")


def is_square(x: int, p: int) -> bool:
    """True for 0 and the nonzero quadratic residues mod an odd prime."""
    x %= p
    return x == 0 or pow(x, (p - 1) // 2, p) == 1


def dot(u: Sequence[int], v: Sequence[int], p: int) -> int:
    return sum(a * b for a, b in zip(u, v)) % p


def vector(moduli: Sequence[int], coords: Iterable[int]) -> Vector:
    """Validate ``coords`` against ``moduli`` and return it as a tuple."""
    coords = tuple(int(c) for c in coords)
    if len(coords) != len(moduli):
        raise DimensionMismatch(f"{len(coords)} coordinates for a group with {len(moduli)} factors")
    for i, (c, m) in enumerate(zip(coords, moduli)):
        if not 0 <= c < m:
            raise FugledeError(f"coordinate {i} = {c} outside [0, {m})")
    return coords


def all_elements(moduli: Sequence[int]) -> list[Vector]:
    """Every element of the group, in lexicographic order."""
    return list(itertools.product(*(range(m) for m in moduli)))


def element_index(moduli: Sequence[int], v: Sequence[int]) -> int:
    idx = 0
    for c, m in zip(v, moduli):
        idx = idx * m + c
    return idx


@dataclass(frozen=True)
class PointSet:
    """A set of distinct points in the group with the given moduli.

    ``points`` is kept sorted lexicographically, which is also the default
    ordering used whenever a set is turned into a matrix.
    """

    moduli: tuple
    points: tuple

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if not moduli or any(m < 1 for m in moduli):
            raise FugledeError(f"invalid moduli {moduli}")
        pts = [vector(moduli, v) for v in self.points]
        uniq = sorted(set(pts))
        if len(uniq) != len(pts):
            raise FugledeError("duplicate points in set")
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "points", tuple(uniq))

    @classmethod
    def homogeneous(cls, p: int, d: int, points: Iterable[Sequence[int]]) -> "PointSet":
        return cls((p,) * d, tuple(tuple(x % p for x in v) for v in points))

    @classmethod
    def whole(cls, moduli: Sequence[int]) -> "PointSet":
        return cls(tuple(moduli), tuple(all_elements(moduli)))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, v):
        return tuple(v) in self._lookup

    @property
    def _lookup(self):
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = frozenset(self.points)
            object.__setattr__(self, "_lookup_cache", cache)
        return cache

    @property
    def d(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        """Order of the ambient group."""
        return prod(self.moduli)

    @property
    def is_homogeneous(self) -> bool:
        return len(set(self.moduli)) == 1 and is_prime(self.moduli[0])

    @property
    def p(self) -> int:
        if not self.is_homogeneous:
            raise AmbientMismatch(f"ambient {self.moduli} is not Z_p^d")
        return self.moduli[0]

    def translate(self, m: Sequence[int]) -> "PointSet":
        return PointSet(self.moduli, tuple(
            tuple((a + b) % q for a, b, q in zip(v, m, self.moduli)) for v in self.points))

    def scale(self, s: int) -> "PointSet":
        return PointSet(self.moduli, tuple(
            tuple((s * a) % q for a, q in zip(v, self.moduli)) for v in self.points))

    def embed(self, d: int) -> "PointSet":
        """Zero-pad every point of a homogeneous set into ``Z_p^d``."""
        pad = (0,) * (d - self.d)
        return PointSet((self.p,) * d, tuple(v + pad for v in self.points))


def require_same_ambient(*sets: PointSet) -> tuple:
    moduli = sets[0].moduli
    for s in sets[1:]:
        if s.moduli != moduli:
            raise AmbientMismatch(f"ambient groups differ: {moduli} vs {s.moduli}")
    return moduli


def require_homogeneous(*sets: PointSet) -> tuple[int, int]:
    require_same_ambient(*sets)
    s = sets[0]
    if not s.is_homogeneous:
        raise AmbientMismatch(f"ambient {s.moduli} is not Z_p^d for a prime p")
    return s.p, s.d


# ---------------------------------------------------------------- matrices


@dataclass(frozen=True)
class ResidueMatrix:
    """Rectangular matrix over Z_p, stored row-major as a tuple of tuples."""

    p: int
    rows: tuple

    def __post_init__(self):
        check_prime(self.p)
        rows = tuple(tuple(int(x) % self.p for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "ResidueMatrix":
        return ResidueMatrix(self.p, tuple(zip(*self.rows)))

    def __matmul__(self, other: "ResidueMatrix") -> "ResidueMatrix":
        if self.p != other.p or self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows
        return ResidueMatrix(self.p, tuple(
            tuple(dot(r, c, self.p) for c in cols) for r in self.rows))

    def apply(self, v: Sequence[int]) -> Vector:
        return tuple(dot(r, v, self.p) for r in self.rows)

    def permute(self, row_order: Sequence[int], col_order: Sequence[int]) -> "ResidueMatrix":
        return ResidueMatrix(self.p, tuple(
            tuple(self.rows[i][j] for j in col_order) for i in row_order))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    @classmethod
    def identity(cls, p: int, n: int) -> "ResidueMatrix":
        return cls(p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_function(cls, p: int, nrows: int, ncols: int, f) -> "ResidueMatrix":
        return cls(p, tuple(tuple(f(i, j) for j in range(ncols)) for i in range(nrows)))


@dataclass(frozen=True)
class EchelonForm:
    rank: int
    rref: tuple            # reduced rows, nonzero rows first
    pivots: tuple          # pivot column of each nonzero rref row
    independent_rows: tuple  # indices of rows that raise the rank, in row order


def _rref_rows(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows = [list(r) for r in rows]
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def gauss_jordan(M: ResidueMatrix) -> EchelonForm:
    """Reduced row echelon form, rank and a row-ordered independent row set."""
    p = M.p
    reduced, pivots = _rref_rows(M.to_lists(), p)
    rank = len(pivots)
    # Rows that raise the rank when scanned top to bottom.
    basis: list[list[int]] = []
    basis_piv: list[int] = []
    independent = []
    for i, row in enumerate(M.rows):
        v = list(row)
        for b, c in zip(basis, basis_piv):
            if v[c]:
                f = v[c]
                v = [(x - f * y) % p for x, y in zip(v, b)]
        c = next((k for k, x in enumerate(v) if x), None)
        if c is None:
            continue
        inv = pow(v[c], -1, p)
        v = [(x * inv) % p for x in v]
        for k, b in enumerate(basis):
            if b[c]:
                f = b[c]
                basis[k] = [(x - f * y) % p for x, y in zip(b, v)]
        basis.append(v)
        basis_piv.append(c)
        independent.append(i)
    if len(independent) != rank:
        raise AssertionError("row scan and elimination disagree on rank")
    return EchelonForm(rank, tuple(tuple(r) for r in reduced[:rank]), tuple(pivots),
                       tuple(independent))


def rank_mod_p(M: ResidueMatrix) -> int:
    return gauss_jordan(M).rank


def solve_mod_p(A: ResidueMatrix, b: Sequence[int]) -> Vector:
    """One solution ``x`` of ``A x = b`` (free variables set to zero)."""
    p = A.p
    aug = [list(r) + [bi % p] for r, bi in zip(A.rows, b)]
    reduced, pivots = _rref_rows(aug, p)
    n = A.ncols
    if n in pivots:
        raise SingularMatrix("inconsistent linear system")
    x = [0] * n
    for row, c in zip(reduced, pivots):
        x[c] = row[n]
    return tuple(x)


def inverse(A: ResidueMatrix) -> ResidueMatrix:
    if not A.is_square:
        raise SingularMatrix("only square matrices are invertible")
    n, p = A.nrows, A.p
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A.rows)]
    reduced, pivots = _rref_rows(aug, p)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix(f"matrix has rank {sum(c < n for c in pivots)} < {n}")
    return ResidueMatrix(p, tuple(tuple(r[n:]) for r in reduced))


def nullspace(A: ResidueMatrix) -> list[Vector]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    p, n = A.p, A.ncols
    reduced, pivots = _rref_rows(A.to_lists(), p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for row, c in zip(reduced, pivots):
            x[c] = (-row[f]) % p
        basis.append(tuple(x))
    return basis


def random_invertible(p: int, d: int, rng) -> ResidueMatrix:
    while True:
        M = ResidueMatrix(p, tuple(tuple(int(rng.integers(p)) for _ in range(d)) for _ in range(d)))
        if rank_mod_p(M) == d:
            return M


# ---------------------------------------------------------------- subspaces


@dataclass(frozen=True)
class Subspace:
    """Subspace of Z_p^d, identified by the RREF of its basis."""

    p: int
    d: int
    basis: tuple

    def __post_init__(self):
        check_prime(self.p)
        vecs = [tuple(int(x) % self.p for x in v) for v in self.basis]
        if any(len(v) != self.d for v in vecs):
            raise DimensionMismatch("basis vector of wrong length")
        if vecs:
            reduced, pivots = _rref_rows(vecs, self.p)
            if len(pivots) != len(vecs):
                raise FugledeError("basis vectors are linearly dependent")
            vecs = [tuple(r) for r in reduced]
        object.__setattr__(self, "basis", tuple(vecs))

    @classmethod
    def span(cls, p: int, d: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        vecs = [list(v) for v in vectors]
        if not vecs:
            return cls(p, d, ())
        reduced, pivots = _rref_rows(vecs, p)
        return cls(p, d, tuple(tuple(r) for r in reduced[:len(pivots)]))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        if not self.basis:
            return not any(x % self.p for x in v)
        reduced, pivots = _rref_rows([list(b) for b in self.basis] + [list(v)], self.p)
        return len(pivots) == self.dim

    def elements(self) -> list[Vector]:
        p = self.p
        out = []
        for coeffs in itertools.product(range(p), repeat=self.dim):
            out.append(tuple(sum(c * b[k] for c, b in zip(coeffs, self.basis)) % p
                             for k in range(self.d)))
        return sorted(out)

    def as_pointset(self) -> PointSet:
        return PointSet((self.p,) * self.d, tuple(self.elements()))

    def matrix(self) -> ResidueMatrix:
        return ResidueMatrix(self.p, self.basis)


def orthogonal_complement(V: Subspace) -> Subspace:
    if V.dim == 0:
        return Subspace(V.p, V.d, tuple(tuple(int(i == j) for j in range(V.d)) for i in range(V.d)))
    return Subspace.span(V.p, V.d, nullspace(V.matrix()))


def gaussian_binomial(d: int, k: int, p: int) -> int:
    if not 0 <= k <= d:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (d - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def enumerate_subspaces(p: int, d: int, k: int,
                        budget: int = DEFAULT_ENUMERATION_BUDGET) -> list[Subspace]:
    """Every k-dimensional subspace of Z_p^d, each given by its RREF basis."""
    check_prime(p)
    if not 0 <= k <= d:
        raise DimensionMismatch(f"need 0 <= k <= d, got k={k}, d={d}")
    count = gaussian_binomial(d, k, p)
    if count > budget:
        raise BudgetExceeded(f"{count} subspaces exceed the budget of {budget}")
    out = []
    for pivots in itertools.combinations(range(d), k):
        # Free entries: positions right of the row's pivot that are not pivot columns.
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * d for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(free, values):
                rows[r][c] = x
            out.append(Subspace(p, d, tuple(tuple(r) for r in rows)))
    return out


def affine_image(E: PointSet, B: ResidueMatrix, m: Sequence[int]) -> PointSet:
    """``{B x + m : x in E}`` for invertible ``B``."""
    p, d = require_homogeneous(E)
    if B.p != p or B.shape != (d, d):
        raise DimensionMismatch(f"need a {d}x{d} matrix over Z_{p}")
    if rank_mod_p(B) < d:
        raise SingularMatrix("affine map is not invertible")
    return PointSet(E.moduli, tuple(
        tuple((a + b) % p for a, b in zip(B.apply(x), m)) for x in E.points))


# ---------------------------------------------------------------- tables


@dataclass(frozen=True)
class GroupTables:
    """Index tables for Z_p^d used by the search kernels.

    Element ``i`` is ``elements[i]`` in lexicographic order; ``sub[i, j]`` is
    the index of ``elements[i] - elements[j]`` and ``dot[i, j]`` the residue
    ``elements[i] . elements[j]``.
    """

    p: int
    d: int
    elements: np.ndarray
    sub: np.ndarray
    add: np.ndarray
    dot: np.ndarray

    @property
    def size(self) -> int:
        return self.p ** self.d

    def index(self, v: Sequence[int]) -> int:
        return element_index((self.p,) * self.d, v)

    def point(self, i: int) -> Vector:
        return tuple(int(x) for x in self.elements[i])


@lru_cache(maxsize=16)
def group_tables(p: int, d: int) -> GroupTables:
    check_prime(p)
    size = p ** d
    if size > 4096:
        raise BudgetExceeded(f"index tables for Z_{p}^{d} ({size}^2 entries) are too large")
    elems = np.array(all_elements((p,) * d), dtype=np.int64).reshape(size, d)
    weights = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    sub = (((elems[:, None, :] - elems[None, :, :]) % p) @ weights).astype(np.int32)
    add = (((elems[:, None, :] + elems[None, :, :]) % p) @ weights).astype(np.int32)
    dt = ((elems @ elems.T) % p).astype(np.uint8)
    for a in (elems, sub, add, dt):
        a.setflags(write=False)
    return GroupTables(p, d, elems, sub, add, dt)
