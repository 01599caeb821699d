"""Exhaustive verification engines for small groups.

Every ``Proven`` verdict rests on an exhausted search space; running out of
nodes or time yields ``BudgetExceeded`` instead.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

from . import kernels
from .certificates import BUDGET_EXCEEDED, PROVEN, REFUTED, SearchReport
from .errors import BudgetExceeded, FugledeError, UnsupportedPrime
from .field import (
    PointSet,
    ResidueMatrix,
    check_prime,
    enumerate_subspaces,
    group_tables,
    rank_mod_p,
)
from .spectral import is_log_hadamard, is_special_dephased, spectrum_indices, spectral_size_check
from .tiling import as_graph, k_tile_with_hyperplane, tiling_partner_indices

DEFAULT_MAX_NODES = 10**7
DEFAULT_MAX_SETS = 2**17


class _Clock:
    def __init__(self, max_nodes, max_seconds):
        self.start = time.perf_counter()
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.nodes = 0

    def remaining(self) -> int:
        return max(self.max_nodes - self.nodes, 0)

    def check(self):
        if self.max_seconds is not None and self.elapsed() > self.max_seconds:
            raise BudgetExceeded(f"time limit of {self.max_seconds}s reached", self.nodes)
        if self.nodes >= self.max_nodes:
            raise BudgetExceeded(f"node limit of {self.max_nodes} reached", self.nodes)

    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def _power_of(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def _is_graph_set(E: PointSet, p: int, d: int) -> bool:
    k = _power_of(len(E), p)
    return any(as_graph(E, V) is not None for V in enumerate_subspaces(p, d, d - k))


# ---------------------------------------------------------------- brute force


def brute_force_fuglede(p: int, d: int, max_nodes: int = DEFAULT_MAX_NODES,
                        max_seconds: float | None = None, max_sets: int = DEFAULT_MAX_SETS,
                        sizes=None) -> SearchReport:
    """Decide tiling and spectrality for every subset of Z_p^d containing 0.

    All sizes are examined when there are at most ``max_sets`` candidate
    sets; otherwise only sizes that could tile or be spectral are examined
    and the report says so.  In dimension <= 2 both directions of
    tiling <=> spectral are tested, above that only tiling => spectral.
    Alongside, every spectral set must k-tile with a hyperplane, tiling sets
    in dimension <= 3 must be graph sets, spectral sizes must avoid the gap
    (p^(d-1), p^d), and for p = 2 spectral sizes must be 1, 2 or 0 mod 4.
    """
    check_prime(p)
    N = p ** d
    both_ways = d <= 2
    statement = (f"in Z_{p}^{d} a set tiles iff it is spectral" if both_ways
                 else f"in Z_{p}^{d} every tiling set is spectral")
    clock = _Clock(max_nodes, max_seconds)
    if sizes is not None:
        sizes = sorted(set(sizes))
        size_filter = "caller"
    elif 2 ** (N - 1) <= max_sets:
        sizes = list(range(1, N + 1))
        size_filter = "none"
    else:
        sizes = [s for s in range(1, N + 1)
                 if _power_of(s, p) is not None or spectral_size_check(s, p, d)]
        size_filter = "sizes that can tile or be spectral"
    total = sum(math.comb(N - 1, s - 1) for s in sizes)
    details = {"p": p, "d": d, "sizes": sizes, "size_filter": size_filter,
               "candidate_sets": total, "translation_quotient": "0 in E"}
    if total > max_sets:
        details["reason"] = f"{total} candidate sets exceed max_sets = {max_sets}"
        return SearchReport(statement, BUDGET_EXCEEDED, 0, clock.elapsed(), details)
    if N > 4096:
        details["reason"] = "group too large for bitset search"
        return SearchReport(statement, BUDGET_EXCEEDED, 0, clock.elapsed(), details)

    tables = group_tables(p, d)
    per_size = {}
    violations = []

    def violate(kind, pts):
        violations.append({"kind": kind, "set": [list(tables.point(i)) for i in pts]})

    try:
        for s in sizes:
            row = per_size.setdefault(s, {"sets": 0, "tiling": 0, "spectral": 0, "spectral_not_tiling": 0})
            for rest in itertools.combinations(range(1, N), s - 1):
                clock.check()
                pts = (0,) + rest
                tile, n1 = tiling_partner_indices(tables, pts, clock.remaining())
                clock.nodes += n1
                spec, n2 = spectrum_indices(tables, pts, clock.remaining())
                clock.nodes += n2
                tile, spec = tile is not None, spec is not None
                row["sets"] += 1
                row["tiling"] += tile
                row["spectral"] += spec
                row["spectral_not_tiling"] += spec and not tile
                if tile and not spec:
                    violate("tiling but not spectral", pts)
                if both_ways and spec and not tile:
                    violate("spectral but not tiling", pts)
                if spec and p ** (d - 1) < s < N:
                    violate("spectral set inside the size gap", pts)
                if spec and p == 2 and s > 2 and s % 4:
                    violate("spectral set in Z_2^d of size 2 mod 4", pts)
                if spec or (tile and d <= 3):
                    E = PointSet((p,) * d, tuple(tables.point(i) for i in pts))
                    if spec and s > 1:
                        try:
                            k_tile_with_hyperplane(E)
                        except FugledeError:
                            violate("spectral set without a hyperplane k-tiling", pts)
                    if tile and d <= 3 and not _is_graph_set(E, p, d):
                        violate("tiling set that is not a graph set", pts)
    except BudgetExceeded as exc:
        details["reason"] = str(exc)
        details["per_size"] = per_size
        return SearchReport(statement, BUDGET_EXCEEDED, clock.nodes, clock.elapsed(), details)

    details["per_size"] = per_size
    details["spectral_sizes"] = sorted(s for s, r in per_size.items() if r["spectral"])
    details["tiling_sizes"] = sorted(s for s, r in per_size.items() if r["tiling"])
    details["violations"] = len(violations)
    if violations:
        return SearchReport(statement, REFUTED, clock.nodes, clock.elapsed(), details, violations[0])
    return SearchReport(statement, PROVEN, clock.nodes, clock.elapsed(), details)


# ---------------------------------------------------------------- special dephased matrices


def _candidate_rows(p, n, first):
    """Vectors v of length n with v[0] = 0, v[1] = first, v and v - row1 balanced."""
    m = n // p
    row1 = [k % p for k in range(n)]
    out = []
    v = [0] * n
    cnt = [0] * p
    dcnt = [0] * p

    def place(k, x):
        cnt[x] += 1
        dcnt[(x - row1[k]) % p] += 1

    def unplace(k, x):
        cnt[x] -= 1
        dcnt[(x - row1[k]) % p] -= 1

    def rec(k):
        if k == n:
            out.append(tuple(v))
            return
        for x in range(p):
            if cnt[x] < m and dcnt[(x - row1[k]) % p] < m:
                v[k] = x
                place(k, x)
                rec(k + 1)
                unplace(k, x)

    for k, x in ((0, 0), (1, first % p)):
        if cnt[x] >= m or dcnt[(x - row1[k]) % p] >= m:
            return out
        v[k] = x
        place(k, x)
    rec(2)
    return out


def _orbit(M, p):
    """Images of M under row permutations fixing rows 0, 1 and column 1, and
    column permutations fixing columns 0, 1 and row 1."""
    n = len(M)
    classes = [[i for i in range(2, n) if i % p == c] for c in range(p)]

    def perms():
        out = [[]]
        for cls in classes:
            out = [o + [(a, b) for a, b in zip(cls, q)]
                   for o in out for q in itertools.permutations(cls)]
        return out

    maps = perms()
    for rmap in maps:
        rows = list(range(n))
        for a, b in rmap:
            rows[a] = b
        for cmap in maps:
            cols = list(range(n))
            for a, b in cmap:
                cols[a] = b
            yield tuple(tuple(M[r][c] for c in cols) for r in rows)


def _canonical_key(M, p):
    n = len(M)
    row_p = M[p][2:] if n > p else ()
    col_2 = tuple(M[i][2] for i in range(2, n)) if n > 2 else ()
    return row_p, col_2, M


def canonical_special_dephased(M: ResidueMatrix) -> ResidueMatrix:
    """Orbit representative maximizing, in order, row p read from column 2,
    column 2 read from row 2, then the whole matrix row by row.

    For the 6 x 6 case over Z_3 the first two criteria are the column swap
    making entry (3, 2) equal to 2 and the row swap making entry (2, 2) equal
    to 1.
    """
    best = max(_orbit(M.rows, M.p), key=lambda X: _canonical_key(X, M.p))
    return ResidueMatrix(M.p, best)


@dataclass
class DephasedEnumeration:
    p: int
    m: int
    matrices: list          # (ResidueMatrix, rank) pairs, canonical when symmetry broken
    completions: int        # leaves reached before isomorph rejection
    nodes: int
    symmetry_breaking: bool


def enumerate_special_dephased(p: int, m: int, rank_filter: int | None = None,
                               max_nodes: int = DEFAULT_MAX_NODES, max_seconds: float | None = None,
                               symmetry_breaking: bool = True) -> DephasedEnumeration:
    """All special dephased ``mp x mp`` log-Hadamard matrices over Z_p.

    Rows 2.. are filled in order from precomputed candidate rows (balanced,
    balanced against row 1, with the forced entry in column 1); a row must
    differ from every earlier row by a balanced vector.  With symmetry
    breaking only orbit-canonical completions are kept.
    """
    check_prime(p)
    n = m * p
    if n < 1:
        raise ValueError("m must be positive")
    clock = _Clock(max_nodes, max_seconds)
    if n == 1:
        leaves = [((0,),)]
    else:
        row0 = (0,) * n
        row1 = tuple(k % p for k in range(n))
        cands = []
        cls_mask = [0] * p
        for c in range(p):
            for v in _candidate_rows(p, n, c):
                if v != row1 and any(v):
                    cls_mask[c] |= 1 << len(cands)
                    cands.append(v)
        adj = kernels.balanced_adjacency(cands, p) if cands else []
        leaves = []
        chosen = []

        def rec(i, allowed):
            if i == n:
                leaves.append((row0, row1) + tuple(cands[k] for k in chosen))
                return
            for k in kernels.bits(allowed & cls_mask[i % p]):
                clock.nodes += 1
                clock.check()
                chosen.append(k)
                rec(i + 1, allowed & adj[k])
                chosen.pop()

        rec(2, (1 << len(cands)) - 1)

    out = []
    for rows in leaves:
        M = ResidueMatrix(p, rows)
        if not (is_special_dephased(M) and is_log_hadamard(M)):
            raise AssertionError("completion is not special dephased log-Hadamard")
        if symmetry_breaking and canonical_special_dephased(M) != M:
            continue
        r = rank_mod_p(M)
        if rank_filter is None or r == rank_filter:
            out.append((M, r))
    return DephasedEnumeration(p, m, out, len(leaves), clock.nodes, symmetry_breaking)


def verify_fuglede_dim3(p: int, attempt: bool = False, max_nodes: int = DEFAULT_MAX_NODES,
                        max_seconds: float | None = None) -> SearchReport:
    """Fuglede in Z_p^3 via the absence of rank-3 special dephased mp x mp
    log-Hadamard matrices for 1 < m < p."""
    check_prime(p)
    t0 = time.perf_counter()
    statement = f"in Z_{p}^3 a set tiles iff it is spectral"
    steps = [
        "tiling sets in Z_p^3 are spectral; spectral sets of size 1, p, p^2, p^3 tile",
        "so a counterexample is a spectral set of size mp with 1 < m < p",
        "such a set exists iff an mp x mp log-Hadamard matrix of rank <= 3 exists",
        "rank <= 2 is impossible since Z_p^2 has no spectral set of size mp, 1 < m < p",
        "translating so that 0 lies in both sets makes the matrix dephased, and row and column "
        "permutations then reach the special dephased form without changing the rank",
    ]
    if p == 2:
        details = {"steps": steps, "reason": "no integer m with 1 < m < 2"}
        return SearchReport(statement, PROVEN, 0, time.perf_counter() - t0, details)
    if p > 3 and not attempt:
        raise UnsupportedPrime(f"p = {p} is open; use attempt mode to search anyway")
    nodes = 0
    found = {}
    try:
        for m in range(2, p):
            res = enumerate_special_dephased(p, m, None, max_nodes - nodes, max_seconds,
                                             symmetry_breaking=(p == 3))
            nodes += res.nodes
            found[m] = res
    except BudgetExceeded as exc:
        details = {"steps": steps, "reason": str(exc), "completed_m": sorted(found)}
        return SearchReport(statement, BUDGET_EXCEEDED, nodes + (exc.nodes or 0),
                            time.perf_counter() - t0, details)
    details = {"steps": steps, "per_m": {}}
    witness = None
    for m, res in found.items():
        ranks = sorted({r for _, r in res.matrices})
        details["per_m"][m] = {"matrices": len(res.matrices), "completions": res.completions,
                               "ranks": ranks}
        rank3 = [M for M, r in res.matrices if r == 3]
        if rank3 and witness is None:
            witness = {"m": m, "matrix": rank3[0].to_lists()}
    if p == 3:
        (M, r), = found[2].matrices
        details["unique_matrix"] = M.to_lists()
        details["rank"] = r
    verdict = REFUTED if witness else PROVEN
    return SearchReport(statement, verdict, nodes, time.perf_counter() - t0, details, witness)


# ---------------------------------------------------------------- complete mappings


@dataclass(frozen=True)
class CompleteMappingReport:
    p: int
    total: int
    affine: int
    non_affine: int
    maps: tuple

    def to_dict(self):
        return {"p": self.p, "total": self.total, "affine": self.affine,
                "non_affine": self.non_affine, "maps": [list(m) for m in self.maps]}


def verify_complete_mapping_rows(p: int) -> CompleteMappingReport:
    """Bijections psi of Z_p with psi(0) = 0 and x -> psi(x) - x bijective,
    split into the affine ones psi(x) = ix and the rest."""
    check_prime(p)
    if p > 13:
        raise UnsupportedPrime("complete mapping enumeration supports p <= 13")
    maps = tuple(sorted(kernels.complete_mappings(p)))
    affine = {tuple(i * x % p for x in range(p)) for i in range(2, p)}
    n_aff = sum(m in affine for m in maps)
    return CompleteMappingReport(p, len(maps), n_aff, len(maps) - n_aff, maps)
