"""Spectral pairs, log-Hadamard matrices and the passage between them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InternalInconsistency,
    NotLogHadamard,
    SizeMismatch,
)
from .field import (
    PointSet,
    ResidueMatrix,
    dot,
    gauss_jordan,
    group_tables,
    require_homogeneous,
    solve_mod_p,
)
from .fourier import ft_is_zero, is_balanced, normalize_line

DEFAULT_MAX_NODES = 10**7


@dataclass(frozen=True)
class SpectralVerdict:
    is_spectral: bool
    violating_pair: tuple | None  # (b, b') with E^(b - b') != 0

    def __bool__(self):
        return self.is_spectral


def is_spectral_pair(E: PointSet, B: PointSet) -> SpectralVerdict:
    p, _ = require_homogeneous(E, B)
    if len(E) != len(B):
        raise SizeMismatch(f"|E| = {len(E)} but |B| = {len(B)}")
    seen = {}
    pts = B.points
    for i, b in enumerate(pts):
        for c in pts[i + 1:]:
            line = normalize_line(tuple((x - y) % p for x, y in zip(b, c)), p)
            if line not in seen:
                seen[line] = ft_is_zero(E, line)
            if not seen[line]:
                return SpectralVerdict(False, (b, c))
    return SpectralVerdict(True, None)


def dot_matrix(E, B, p: int | None = None) -> ResidueMatrix:
    """``L[i][j] = e_i . b_j``.

    ``E`` and ``B`` may be point sets (lexicographic order) or explicit
    sequences of points, in which case ``p`` is required.
    """
    if isinstance(E, PointSet):
        p, _ = require_homogeneous(E, B)
        E, B = E.points, B.points
    if len(E) != len(B):
        raise SizeMismatch(f"{len(E)} rows but {len(B)} columns")
    return ResidueMatrix(p, tuple(tuple(dot(e, b, p) for b in B) for e in E))


def butson_is_orthogonal(E: PointSet, B: PointSet, tol: float = 1e-9) -> bool:
    """Floating-point check that ``M = exp(2 pi i e.b / p)`` satisfies ``M M* = N I``."""
    L = dot_matrix(E, B).to_array()
    M = np.exp(2j * np.pi * L / E.p)
    G = M @ M.conj().T
    return bool(np.max(np.abs(G - len(E) * np.eye(len(E)))) < tol * max(len(E), 1))


@dataclass(frozen=True)
class LogHadamardVerdict:
    is_log_hadamard: bool
    witness: tuple | None   # ("row" | "col", i, j) of an unbalanced difference

    def __bool__(self):
        return self.is_log_hadamard


def _first_unbalanced(vectors, p):
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            if not is_balanced([(a - b) % p for a, b in zip(vectors[i], vectors[j])], p):
                return i, j
    return None


def is_log_hadamard(M: ResidueMatrix) -> LogHadamardVerdict:
    if not M.is_square:
        raise DimensionMismatch(f"log-Hadamard matrices are square, got {M.shape}")
    bad_row = _first_unbalanced(M.rows, M.p)
    bad_col = _first_unbalanced(M.transpose().rows, M.p)
    if (bad_row is None) != (bad_col is None):
        raise AssertionError("row and column balance disagree")
    if bad_row is not None:
        return LogHadamardVerdict(False, ("row",) + bad_row)
    return LogHadamardVerdict(True, None)


def require_log_hadamard(M: ResidueMatrix) -> None:
    v = is_log_hadamard(M)
    if not v:
        raise NotLogHadamard(f"rows {v.witness[1]} and {v.witness[2]} differ by an unbalanced vector")


def dephase(M: ResidueMatrix) -> ResidueMatrix:
    """Subtract row 0 from every row and column 0 from every column."""
    r0, c0 = M.rows[0], M.col(0)
    return ResidueMatrix(M.p, tuple(
        tuple(x - r0[j] - c0[i] + r0[0] for j, x in enumerate(row)) for i, row in enumerate(M.rows)))


def is_dephased(M: ResidueMatrix) -> bool:
    return not any(M.rows[0]) and not any(M.col(0))


def special_pattern(p: int, n: int) -> tuple:
    return tuple(k % p for k in range(n))


def is_special_dephased(M: ResidueMatrix) -> bool:
    pat = special_pattern(M.p, M.nrows)
    return is_dephased(M) and (M.nrows < 2 or (M.rows[1] == pat and M.col(1) == pat))


def _stable_assignment(values: dict, positions, p: int, what: str) -> list[int]:
    """For each position k take the least unused index whose value is k mod p."""
    pool = dict(values)
    order = []
    for k in positions:
        idx = next((i for i in sorted(pool) if pool[i] == k % p), None)
        if idx is None:
            raise NotLogHadamard(f"{what} is not balanced")
        order.append(idx)
        del pool[idx]
    return order


def special_dephase(M: ResidueMatrix) -> ResidueMatrix:
    """Equivalent matrix whose rows/columns 0 are zero and rows/columns 1 read 0,1,..,p-1 repeated.

    Row 1 stays in place, the least column with a 1 in row 1 becomes column 1,
    and all other rows and columns keep their relative order (the
    lexicographically least permutations doing the job).
    """
    require_log_hadamard(M)
    D = dephase(M)
    n, p = D.nrows, D.p
    if n == 1:
        return D
    if n % p:
        raise NotLogHadamard(f"size {n} is not a multiple of {p}")
    c = next(j for j in range(n) if D[1, j] == 1)
    rows = [0, 1] + _stable_assignment({i: D[i, c] for i in range(2, n)}, range(2, n), p, "pivot column")
    rest = {j: D[1, j] for j in range(1, n) if j != c}
    cols = [0, c] + _stable_assignment(rest, range(2, n), p, "row 1")
    out = D.permute(rows, cols)
    if not is_special_dephased(out):
        raise AssertionError("special dephasing failed")
    return out


@dataclass(frozen=True)
class SpectralPairRecord:
    E: PointSet
    B: PointSet
    dot_matrix: ResidueMatrix
    e_order: tuple          # points of E in matrix row order
    b_order: tuple          # points of B in matrix column order

    @property
    def dim(self) -> int:
        return self.E.d


def factor_log_hadamard(M: ResidueMatrix) -> SpectralPairRecord:
    """Spectral pair in Z_p^r, r = rank(M), whose dot-product matrix is ``M``.

    With ``r_1..r_r`` the first independent rows of ``M``, row ``i`` of ``M``
    is ``sum_j e_ij r_j``; ``E`` collects the coefficient vectors and ``B`` the
    columns of the matrix with rows ``r_j``.
    """
    p, n = M.p, M.nrows
    ech = gauss_jordan(M)
    basis = [M.rows[i] for i in ech.independent_rows]
    r = len(basis)
    if r == 0:
        raise InternalInconsistency("zero matrix has no spectral factorization")
    Rt = ResidueMatrix(p, tuple(zip(*basis)))          # n x r
    e_rows = tuple(solve_mod_p(Rt, row) for row in M.rows)
    b_rows = tuple(tuple(basis[j][k] for j in range(r)) for k in range(n))
    L = dot_matrix(e_rows, b_rows, p)
    if L != M:
        raise InternalInconsistency("E B^T does not reproduce the matrix")
    if len(set(e_rows)) != n or len(set(b_rows)) != n:
        raise InternalInconsistency("repeated rows: the input is not log-Hadamard")
    E = PointSet((p,) * r, e_rows)
    B = PointSet((p,) * r, b_rows)
    if not is_spectral_pair(E, B):
        raise InternalInconsistency("extracted pair is not spectral")
    return SpectralPairRecord(E, B, L, e_rows, b_rows)


# ---------------------------------------------------------------- search


def spectrum_indices(tables, points, max_nodes=DEFAULT_MAX_NODES):
    """Index-level spectrum search: a clique containing 0 in the Cayley graph
    on the zero cone of ``points``.  Returns ``(indices or None, nodes)``."""
    n = len(points)
    if n == 1:
        return (0,), 0
    zero = kernels.zero_cone_mask(points, tables.dot, tables.p)
    if zero.bit_count() < n - 1:
        return None, 0
    adj = kernels.difference_graph(tables, zero)
    found, nodes, status = kernels.find_cliques(adj, zero, n - 1, max_nodes, 1)
    if found:
        return (0,) + found[0], nodes
    if status == kernels.BUDGET:
        raise BudgetExceeded(f"spectrum search stopped after {nodes} nodes", nodes)
    return None, nodes


def spectrum_search(E: PointSet, max_nodes: int = DEFAULT_MAX_NODES) -> PointSet | None:
    """A spectrum of ``E`` containing 0, or ``None`` when none exists."""
    p, d = require_homogeneous(E)
    if len(E) > 1 and len(E) % p:
        return None
    if p ** d > 4096:
        raise BudgetExceeded(f"Z_{p}^{d} is too large for exhaustive spectrum search")
    tables = group_tables(p, d)
    found, _ = spectrum_indices(tables, [tables.index(e) for e in E], max_nodes)
    if found is None:
        return None
    return PointSet(E.moduli, tuple(tables.point(i) for i in found))


@dataclass(frozen=True)
class SizeCheck:
    allowed: bool
    reason: str

    def __bool__(self):
        return self.allowed


def spectral_size_check(size: int, p: int, d: int) -> SizeCheck:
    """Necessary size conditions for a spectral subset of Z_p^d."""
    full = p ** d
    if size < 1 or size > full:
        return SizeCheck(False, f"size must lie in [1, {full}]")
    if size in (1, full):
        return SizeCheck(True, "singletons and the whole space are spectral")
    if size > p ** (d - 1):
        return SizeCheck(False, f"no spectral set has size strictly between {p ** (d - 1)} and {full}")
    if size % p:
        return SizeCheck(False, f"spectral sets of size > 1 have size divisible by {p}")
    if p == 2 and size != 2 and size % 4:
        return SizeCheck(False, "spectral sets in Z_2^d have size 1, 2 or a multiple of 4")
    return SizeCheck(True, "no size obstruction")
