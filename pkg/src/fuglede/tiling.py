"""Tiling and k-tiling pairs, graph sets, and lifting spectral sets to tilings."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import prod

import numpy as np

from . import kernels
from .errors import (
    AmbientMismatch,
    BudgetExceeded,
    InternalInconsistency,
    NoFourierZero,
    NotEquidistributed,
    SizeProductMismatch,
)
from .field import (
    PointSet,
    Subspace,
    Vector,
    all_elements,
    dot,
    enumerate_subspaces,
    group_tables,
    orthogonal_complement,
    require_homogeneous,
    require_same_ambient,
)
from .fourier import cone_partition, direction_sets, ft_is_zero, normalize_line

DEFAULT_MAX_NODES = 10**7


def _indices(S: PointSet) -> np.ndarray:
    moduli = np.array(S.moduli, dtype=np.int64)
    weights = np.cumprod(np.concatenate([moduli[1:], [1]])[::-1])[::-1]
    pts = np.array(S.points, dtype=np.int64).reshape(len(S), S.d)
    return pts, weights


def cover_counts(E: PointSet, A: PointSet) -> np.ndarray:
    """``counts[x]`` = number of pairs ``(e, a)`` with ``e + a = x``; x in lexicographic index order."""
    moduli = require_same_ambient(E, A)
    pe, w = _indices(E)
    pa, _ = _indices(A)
    sums = (pe[:, None, :] + pa[None, :, :]) % np.array(moduli, dtype=np.int64)
    idx = (sums @ w).ravel()
    return np.bincount(idx, minlength=prod(moduli))


@dataclass(frozen=True)
class TilingVerdict:
    is_tiling: bool
    multiplicity_histogram: dict
    witness: Vector | None  # least element not covered exactly once

    def __bool__(self):
        return self.is_tiling


def _verdict(E: PointSet, counts: np.ndarray, k: int) -> tuple[bool, dict, Vector | None]:
    hist = dict(sorted(Counter(counts.tolist()).items()))
    bad = np.flatnonzero(counts != k)
    witness = _unindex(E.moduli, int(bad[0])) if bad.size else None
    return bad.size == 0, hist, witness


def _unindex(moduli, i):
    out = []
    for m in reversed(moduli):
        out.append(i % m)
        i //= m
    return tuple(reversed(out))


def is_tiling_pair(E: PointSet, A: PointSet) -> TilingVerdict:
    counts = cover_counts(E, A)
    ok, hist, witness = _verdict(E, counts, 1)
    return TilingVerdict(ok, hist, witness)


def is_k_tiling_pair(E: PointSet, A: PointSet, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(E) * len(A) != k * E.order:
        require_same_ambient(E, A)
        return False
    return bool(np.all(cover_counts(E, A) == k))


@dataclass(frozen=True)
class TilingConditions:
    """Independent evaluations of the equivalent tiling criteria, keyed a..h.

    ``h`` (direction cones) is ``None`` outside prime homogeneous groups.
    """

    conditions: dict
    verdict: bool

    @property
    def unanimous(self) -> bool:
        return all(v == self.verdict for v in self.conditions.values() if v is not None)


def tiling_conditions_crosscheck(E: PointSet, A: PointSet) -> TilingConditions:
    p, d = require_homogeneous(E, A)
    if len(E) * len(A) != p ** d:
        raise SizeProductMismatch(f"|E||A| = {len(E) * len(A)} but the group has {p ** d} elements")
    group = all_elements(E.moduli)
    cond = {}
    # (a) unique representation, counted element by element
    reps = [sum(tuple((x - e) % p for x, e in zip(g, ee)) in A for ee in E) for g in group]
    cond["a"] = all(r == 1 for r in reps)
    # (b) translates of E by A are pairwise disjoint and cover the group
    translates = [E.translate(a).points for a in A]
    union = set().union(*map(set, translates))
    cond["b"] = len(union) == p ** d and sum(map(len, translates)) == p ** d
    # (c) E * A = 1 as a convolution
    cond["c"] = bool(np.all(cover_counts(E, A) == 1))
    # (d) E^(m) A^(m) = 0 for every m != 0
    cond["d"] = all(ft_is_zero(E, m) or ft_is_zero(A, m) for m in group if any(m))
    cE, cA = cone_partition(E), cone_partition(A)
    cond["e"] = not (cE.support_cone & cA.support_cone)
    cond["f"] = (cE.zero_cone | cA.zero_cone) == frozenset(m for m in group if any(m))
    dE, dcE = direction_sets(E)
    dA, dcA = direction_sets(A)
    cond["g"] = not (dE & dA)
    cond["h"] = not (dcE & dcA)
    return TilingConditions(cond, is_tiling_pair(E, A).is_tiling)


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class GraphPresentation:
    """``E`` written as ``{w + f(w) : w in W}`` with ``f`` valued in ``V``."""

    V: Subspace
    W: Subspace
    assignments: dict = field(hash=False)

    def points(self) -> list[Vector]:
        p = self.V.p
        return sorted(tuple((a + b) % p for a, b in zip(w, v)) for w, v in self.assignments.items())


def coordinate_complement(V: Subspace) -> Subspace:
    """Span of the standard basis vectors at the non-pivot columns of V."""
    pivots = [next(i for i, x in enumerate(b) if x) for b in V.basis]
    return Subspace(V.p, V.d, tuple(tuple(int(i == c) for i in range(V.d))
                                    for c in range(V.d) if c not in pivots))


def split(V: Subspace, x) -> tuple[Vector, Vector]:
    """``x = w + v`` with ``v`` in V and ``w`` in the coordinate complement."""
    p = V.p
    v = [0] * V.d
    for b in V.basis:
        c = next(i for i, y in enumerate(b) if y)
        coeff = x[c]
        v = [(a + coeff * y) % p for a, y in zip(v, b)]
    w = tuple((a - b) % p for a, b in zip(x, v))
    return w, tuple(v)


def as_graph(E: PointSet, V: Subspace) -> GraphPresentation | None:
    p, d = require_homogeneous(E)
    if (V.p, V.d) != (p, d):
        raise AmbientMismatch("subspace lives in a different group")
    W = coordinate_complement(V)
    if len(E) != p ** W.dim:
        return None
    assignments = {}
    for x in E:
        w, v = split(V, x)
        if w in assignments:
            return None
        assignments[w] = v
    return GraphPresentation(V, W, assignments)


# ---------------------------------------------------------------- partner search


def _log_p(n: int, p: int) -> int | None:
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    return r if n == 1 else None


def tiling_partner_indices(tables, points, max_nodes=DEFAULT_MAX_NODES):
    """Index-level partner search: a clique containing 0 in the graph
    ``x ~ y  iff  x - y not in Dir(E)``.

    Returns ``(partner_indices or None, nodes)``; raises BudgetExceeded.
    """
    size = tables.size
    n = len(points)
    if size % n:
        return None, 0
    target = size // n
    dirs = kernels.direction_mask(points, tables.sub)
    allowed = ~dirs & ((1 << size) - 1) & ~1
    adj = kernels.difference_graph(tables, allowed)
    found, nodes, status = kernels.find_cliques(adj, allowed, target - 1, max_nodes, 1)
    if found:
        return (0,) + found[0], nodes
    if status == kernels.BUDGET:
        raise BudgetExceeded(f"tiling partner search stopped after {nodes} nodes", nodes)
    return None, nodes


def find_tiling_partner(E: PointSet, max_nodes: int = DEFAULT_MAX_NODES) -> PointSet | None:
    """A set ``A`` with ``(E, A)`` tiling, or ``None`` once the search space is exhausted.

    Sizes other than powers of p are rejected outright; then subspaces of the
    complementary dimension are tried, then a full backtracking search over
    partners containing 0.
    """
    p, d = require_homogeneous(E)
    r = _log_p(len(E), p)
    if r is None or r > d:
        return None
    if r == d:
        return PointSet(E.moduli, ((0,) * d,))
    try:
        subspaces = enumerate_subspaces(p, d, d - r, budget=10**5)
    except BudgetExceeded:
        subspaces = []
    for V in subspaces:
        if as_graph(E, V) is not None:
            return V.as_pointset()
    if p ** d > 4096:
        raise BudgetExceeded(f"Z_{p}^{d} is too large for exhaustive partner search")
    tables = group_tables(p, d)
    pts = [tables.index(e) for e in E]
    found, _ = tiling_partner_indices(tables, pts, max_nodes)
    if found is None:
        return None
    return PointSet(E.moduli, tuple(tables.point(i) for i in found))


# ---------------------------------------------------------------- k-tiling


@dataclass(frozen=True)
class HyperplaneTiling:
    normal: Vector | None   # u with E^(u) = 0; None for a singleton
    partner: PointSet       # u-perp, or the whole group for a singleton
    k: int

    @property
    def tiles_already(self) -> bool:
        return self.k == 1


def least_fourier_zero(E: PointSet) -> Vector | None:
    p, d = require_homogeneous(E)
    if len(E) % p:
        return None
    for m in all_elements(E.moduli):
        if any(m) and normalize_line(m, p) == m and ft_is_zero(E, m):
            return m
    return None


def k_tile_with_hyperplane(E: PointSet) -> HyperplaneTiling:
    p, d = require_homogeneous(E)
    if len(E) == 1:
        return HyperplaneTiling(None, PointSet.whole(E.moduli), 1)
    u = least_fourier_zero(E)
    if u is None:
        raise NoFourierZero("the transform of E vanishes nowhere, so E is not spectral")
    H = orthogonal_complement(Subspace.span(p, d, [u])).as_pointset()
    k = len(E) // p
    if not is_k_tiling_pair(E, H, k):
        raise InternalInconsistency(f"E does not {k}-tile with the hyperplane perpendicular to {u}")
    return HyperplaneTiling(u, H, k)


@dataclass(frozen=True)
class ProductLift:
    lifted: PointSet        # in Z_p^d x Z_m (or E itself when already_tiling)
    partner: PointSet
    m: int
    normal: Vector | None
    labels: dict = field(hash=False)
    already_tiling: bool = False


def lift_to_product_tiling(E: PointSet, u=None, force_lift: bool = False,
                           max_nodes: int = DEFAULT_MAX_NODES) -> ProductLift:
    """Attach a ``Z_m`` label to each point so that the labelled set tiles.

    Points on each hyperplane ``{x : x.u = j}`` are labelled ``0..m-1`` in
    lexicographic order; the partner is ``u-perp x {0}``.
    """
    p, d = require_homogeneous(E)
    if not force_lift:
        try:
            partner = find_tiling_partner(E, max_nodes)
        except BudgetExceeded:
            partner = None
        if partner is not None:
            return ProductLift(E, partner, 1, None, {}, already_tiling=True)
    if len(E) % p:
        raise NotEquidistributed(f"|E| = {len(E)} is not a multiple of {p}")
    m = len(E) // p
    if u is None:
        u = least_fourier_zero(E)
        if u is None:
            raise NoFourierZero("the transform of E vanishes nowhere")
    u = tuple(u)
    classes = {j: [] for j in range(p)}
    for e in E:
        classes[dot(e, u, p)].append(e)
    labels = {}
    for j, members in classes.items():
        if len(members) != m:
            raise NotEquidistributed(f"hyperplane e.u = {j} holds {len(members)} points, expected {m}")
        for label, e in enumerate(sorted(members)):
            labels[e] = label
    moduli = E.moduli + (m,)
    lifted = PointSet(moduli, tuple(e + (labels[e],) for e in E))
    H = orthogonal_complement(Subspace.span(p, d, [u]))
    partner = PointSet(moduli, tuple(h + (0,) for h in H.elements()))
    if not is_tiling_pair(lifted, partner):
        raise InternalInconsistency("lifted set does not tile with the hyperplane partner")
    if sorted(x[:-1] for x in lifted) != list(E.points):
        raise InternalInconsistency("projection of the lift is not a bijection onto E")
    return ProductLift(lifted, partner, m, u, labels)
