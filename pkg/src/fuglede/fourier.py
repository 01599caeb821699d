"""Fourier transform of sets in Z_p^d, cones, and balanced vectors.

Vanishing of the transform is decided by counting: ``E^(m) = 0`` exactly when
``E`` meets the ``p`` hyperplanes ``{x : x.m = t}`` equally often.  The complex
value :func:`ft_value` is only a diagnostic.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, DimensionNotMultipleOfP, FugledeError, ZeroFrequency
from .field import (
    PointSet,
    ResidueMatrix,
    Vector,
    all_elements,
    dot,
    group_tables,
    require_homogeneous,
)

DEFAULT_CONE_BUDGET = 10**7


def hyperplane_counts(E: PointSet, m: Sequence[int]) -> list[int]:
    """``counts[t] = |{e in E : e.m = t}|``."""
    p, _ = require_homogeneous(E)
    counts = [0] * p
    for e in E:
        counts[dot(e, m, p)] += 1
    return counts


def ft_is_zero(E: PointSet, m: Sequence[int]) -> bool:
    p, d = require_homogeneous(E)
    if len(m) != d:
        raise FugledeError(f"frequency has {len(m)} coordinates, expected {d}")
    if not any(x % p for x in m):
        raise ZeroFrequency("E^(0) = |E|/p^d never vanishes for nonempty E")
    counts = hyperplane_counts(E, m)
    return min(counts) == max(counts)


def ft_value(E: PointSet, m: Sequence[int]) -> complex:
    """Normalized transform ``p^-d * sum_e exp(-2 pi i e.m / p)`` (floating point)."""
    p, d = require_homogeneous(E)
    total = sum(cmath.exp(-2j * cmath.pi * dot(e, m, p) / p) for e in E)
    return total / p ** d


def _nonzero_frequencies(p: int, d: int):
    return [m for m in all_elements((p,) * d) if any(m)]


def zero_flags(E: PointSet, budget: int = DEFAULT_CONE_BUDGET) -> dict:
    """Map every nonzero frequency to whether the transform of ``E`` vanishes there."""
    p, d = require_homogeneous(E)
    if p ** d > budget:
        raise BudgetExceeded(f"p^d = {p ** d} exceeds the cone budget {budget}")
    freqs = _nonzero_frequencies(p, d)
    if p ** d <= 4096:
        t = group_tables(p, d)
        mask = kernels.zero_cone_mask([t.index(e) for e in E], t.dot, p)
        return {m: bool(mask >> t.index(m) & 1) for m in freqs}
    pts = np.array(E.points, dtype=np.int64).reshape(len(E), d)
    out = {}
    n = len(E)
    for start in range(0, len(freqs), 4096):
        chunk = freqs[start:start + 4096]
        vals = (pts @ np.array(chunk, dtype=np.int64).T) % p
        ok = np.ones(len(chunk), dtype=bool) if n % p == 0 else np.zeros(len(chunk), dtype=bool)
        for t in range(p):
            ok &= (vals == t).sum(axis=0) == n // p
        out.update(zip(chunk, ok.tolist()))
    return out


@dataclass(frozen=True)
class ConePartition:
    p: int
    d: int
    zero_cone: frozenset
    support_cone: frozenset


def is_cone(C, p: int) -> bool:
    return all(tuple((r * x) % p for x in c) in C for c in C for r in range(1, p))


def cone_partition(E: PointSet, budget: int = DEFAULT_CONE_BUDGET) -> ConePartition:
    p, d = require_homogeneous(E)
    flags = zero_flags(E, budget)
    zero = frozenset(m for m, z in flags.items() if z)
    support = frozenset(m for m, z in flags.items() if not z)
    if not (is_cone(zero, p) and is_cone(support, p)):
        raise AssertionError("zero or support cone is not closed under scaling")
    return ConePartition(p, d, zero, support)


def direction_sets(E: PointSet) -> tuple[frozenset, frozenset]:
    """``(Dir(E), DirC(E))``: differences of distinct points and their nonzero multiples."""
    p, _ = require_homogeneous(E)
    pts = E.points
    dirs = frozenset(tuple((a - b) % p for a, b in zip(e, f)) for e in pts for f in pts if e != f)
    cone = frozenset(tuple((r * x) % p for x in v) for v in dirs for r in range(1, p))
    return dirs, cone


def normalize_line(v: Sequence[int], p: int) -> Vector:
    """Representative of ``span(v)`` whose first nonzero coordinate is 1."""
    lead = next(x for x in v if x % p)
    inv = pow(lead, -1, p)
    return tuple((inv * x) % p for x in v)


@dataclass(frozen=True)
class ProjectionStep:
    line: Vector              # kernel direction, in the coordinates before the step
    matrix: ResidueMatrix | None  # (n-1) x n projection; None when n == 1


@dataclass(frozen=True)
class ProjectionChain:
    p: int
    steps: tuple
    image: tuple              # image of E in Z_p^dim, same size as E
    dim: int


def _project_along(points, v, p):
    """Kill ``v`` by eliminating its first nonzero coordinate, then drop that coordinate."""
    n = len(v)
    t = next(i for i, x in enumerate(v) if x)
    inv = pow(v[t], -1, p)
    rows = []
    for k in range(n):
        if k == t:
            continue
        # x_k - (x_t / v_t) v_k
        rows.append(tuple((int(k == c) - (inv * v[k] if c == t else 0)) % p for c in range(n)))
    P = ResidueMatrix(p, tuple(rows)) if rows else None
    image = [P.apply(x) for x in points] if P is not None else [() for _ in points]
    return P, image


def missing_direction_projection(E: PointSet) -> ProjectionChain:
    """Project ``E`` along missing directions until its direction cone is full.

    Each step takes the lexicographically least punctured line missed by the
    current direction cone and projects along it; this is injective on the
    current image because the line contains no difference of two points.
    """
    p, d = require_homogeneous(E)
    points = list(E.points)
    steps = []
    n = d
    while n > 0:
        cone = {normalize_line(tuple((a - b) % p for a, b in zip(x, y)), p)
                for x in points for y in points if x != y}
        line = next((v for v in itertools.product(range(p), repeat=n)
                     if any(v) and normalize_line(v, p) == v and v not in cone), None)
        if line is None:
            break
        P, points = _project_along(points, line, p)
        steps.append(ProjectionStep(line, P))
        n -= 1
        if len(set(points)) != len(E):
            raise AssertionError("projection along a missing direction lost injectivity")
    return ProjectionChain(p, tuple(steps), tuple(sorted(points)), n)


# ---------------------------------------------------------------- balanced vectors


def is_balanced(v: Sequence[int], p: int) -> bool:
    if not v or len(v) % p:
        return False
    counts = [0] * p
    for x in v:
        counts[x % p] += 1
    return min(counts) == max(counts)


def elementary_symmetric(v: Sequence[int], p: int) -> tuple:
    """``(sigma_1, ..., sigma_n)`` of the entries of ``v``, reduced mod p."""
    e = [1] + [0] * len(v)
    for k, x in enumerate(v, start=1):
        for j in range(k, 0, -1):
            e[j] = (e[j] + e[j - 1] * x) % p
    return tuple(e[1:])


def balanced_pattern(p: int, m: int) -> tuple:
    """Symmetric-function values forced on a balanced vector of length ``m p``."""
    out = []
    for j in range(1, m * p + 1):
        if j % (p - 1):
            out.append(0)
        else:
            i = j // (p - 1)
            out.append(((-1) ** i * comb(m, i)) % p if i <= m else 0)
    return tuple(out)


@dataclass(frozen=True)
class BalancedCertificate:
    p: int
    m: int
    sigma_values: tuple
    expected: tuple
    passed: bool
    first_mismatch: int | None  # 1-based index j of the first sigma_j off pattern


def balanced_certificate(v: Sequence[int], p: int) -> BalancedCertificate:
    """Compare the elementary symmetric values of ``v`` with the balanced pattern.

    ``prod (t - v_i) = (t^p - t)^m`` over Z_p exactly when ``v`` is balanced,
    so ``passed`` agrees with :func:`is_balanced`.
    """
    if not v or len(v) % p:
        raise DimensionNotMultipleOfP(f"length {len(v)} is not a positive multiple of {p}")
    m = len(v) // p
    sigma = elementary_symmetric([x % p for x in v], p)
    expected = balanced_pattern(p, m)
    bad = next((j + 1 for j, (a, b) in enumerate(zip(sigma, expected)) if a != b), None)
    return BalancedCertificate(p, m, sigma, expected, bad is None, bad)
