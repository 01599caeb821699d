"""Spectral sets of size 2p that do not tile.

A 2p x 2p log-Hadamard matrix ``L = [[A, nA], [B, C]]`` with
``A_ij = 2ij - i^2``, ``B_ij = (j - ni)^2`` and ``C_ij = n(i - j)^2``
(n a nonsquare) has rank 4 or 5, so it factors into a spectral pair of
size 2p in Z_p^5, or in Z_p^4 when n = -1 is a nonsquare (p = 3 mod 4).
Since 2p never divides a power of p, such sets cannot tile.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import Certificate
from .errors import FugledeError, NotNonsquare, UnsupportedPrime, WrongResidueClass
from .field import (
    PointSet,
    ResidueMatrix,
    check_prime,
    find_nonsquare,
    is_square,
    rank_mod_p,
)
from .fourier import is_balanced
from .spectral import dot_matrix, factor_log_hadamard, is_log_hadamard, is_spectral_pair
from .tiling import find_tiling_partner


def _odd_prime(p: int) -> int:
    check_prime(p)
    if p == 2:
        raise UnsupportedPrime("the construction needs an odd prime")
    return p


@dataclass(frozen=True)
class BrockMatrix:
    p: int
    n: int
    L: ResidueMatrix


def brock_matrix(p: int, n: int | None = None) -> BrockMatrix:
    _odd_prime(p)
    n = find_nonsquare(p) if n is None else n % p
    if n == 0 or is_square(n, p):
        raise NotNonsquare(f"{n} is a square mod {p}")

    def entry(r, c):
        i, j = r % p, c % p
        if r < p:
            a = 2 * i * j - i * i
            return a if c < p else n * a
        return (j - n * i) ** 2 if c < p else n * (i - j) ** 2

    L = ResidueMatrix.from_function(p, 2 * p, 2 * p, entry)
    if not is_log_hadamard(L):
        raise AssertionError(f"L({p}, {n}) is not log-Hadamard")
    return BrockMatrix(p, n, L)


@dataclass(frozen=True)
class SpanningCertificate:
    vectors: tuple          # [j|nj], [1|n], [j|j], [n|1], [j^2|nj^2]
    rows_in_span: bool
    top_rows_in_span: bool  # top rows in span{[j|nj], [1|n]}
    bottom_rows_in_span: bool  # bottom rows in span{[j|j], [n|1], [j^2|nj^2]}
    triple_independent: bool   # [j|j], [j|nj], [1|n]
    square_outside_span: bool  # [j^2|nj^2] not in span{[j|j], [j|nj], [1|n]}
    rank: int

    @property
    def holds(self) -> bool:
        return (self.rows_in_span and self.top_rows_in_span and self.bottom_rows_in_span
                and self.triple_independent and self.square_outside_span
                and 4 <= self.rank <= 5)


def _rank(p, rows):
    return rank_mod_p(ResidueMatrix(p, tuple(rows))) if rows else 0


def _in_span(p, basis, rows):
    r = _rank(p, basis)
    return _rank(p, list(basis) + list(rows)) == r


def brock_spanning_vectors(p: int, n: int | None = None) -> SpanningCertificate:
    bm = brock_matrix(p, n)
    n = bm.n
    J = range(p)
    v_jnj = tuple(j for j in J) + tuple(n * j for j in J)
    v_1n = (1,) * p + (n,) * p
    v_jj = tuple(J) + tuple(J)
    v_n1 = (n,) * p + (1,) * p
    v_sq = tuple(j * j for j in J) + tuple(n * j * j for j in J)
    vecs = tuple(tuple(x % p for x in v) for v in (v_jnj, v_1n, v_jj, v_n1, v_sq))
    rows = bm.L.rows
    return SpanningCertificate(
        vectors=vecs,
        rows_in_span=_in_span(p, vecs, rows),
        top_rows_in_span=_in_span(p, vecs[:2], rows[:p]),
        bottom_rows_in_span=_in_span(p, vecs[2:], rows[p:]),
        triple_independent=_rank(p, [vecs[2], vecs[0], vecs[1]]) == 3,
        square_outside_span=not _in_span(p, [vecs[2], vecs[0], vecs[1]], [vecs[4]]),
        rank=rank_mod_p(bm.L),
    )


# ---------------------------------------------------------------- quadratics


@dataclass(frozen=True)
class QuadraticPolynomial:
    p: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        for k in "abc":
            object.__setattr__(self, k, getattr(self, k) % self.p)
        if self.a == 0:
            raise FugledeError("leading coefficient must be nonzero")

    def __call__(self, x: int) -> int:
        return (self.a * x * x + self.b * x + self.c) % self.p

    def discriminant(self, mu: int = 0) -> int:
        """Discriminant of ``Q(x) - mu``."""
        return (self.b * self.b - 4 * self.a * (self.c - mu)) % self.p


def quad_preimage_count(Q: QuadraticPolynomial, mu: int) -> int:
    _odd_prime(Q.p)
    D = Q.discriminant(mu)
    k = 1 if D == 0 else (2 if is_square(D, Q.p) else 0)
    direct = sum(Q(x) == mu % Q.p for x in range(Q.p))
    if direct != k:
        raise AssertionError(f"discriminant count {k} disagrees with enumeration {direct}")
    return k


@dataclass(frozen=True)
class BalancedPairVerdict:
    balanced: bool            # by preimage counting over every mu
    discriminant_criterion: bool  # a2 = n a1 and disc2 = n disc1 for a nonsquare n

    def __bool__(self):
        return self.balanced


def is_balanced_quadratic_pair(Q1: QuadraticPolynomial, Q2: QuadraticPolynomial) -> BalancedPairVerdict:
    """``(Q1, Q2)`` is balanced when every mu has exactly two preimages in total.

    The discriminant test is the sufficient condition ``D2(mu) = n D1(mu)`` for
    all mu with n a nonsquare; matching the mu-coefficient forces
    ``n = a2 / a1``, so it reduces to ``disc(Q2) = (a2/a1) disc(Q1)``.
    """
    p = Q1.p
    if Q2.p != p:
        raise FugledeError("polynomials over different fields")
    balanced = all(quad_preimage_count(Q1, mu) + quad_preimage_count(Q2, mu) == 2 for mu in range(p))
    n = Q2.a * pow(Q1.a, -1, p) % p
    crit = not is_square(n, p) and Q2.discriminant() == n * Q1.discriminant() % p
    if crit and not balanced:
        raise AssertionError("discriminant criterion holds but the pair is not balanced")
    return BalancedPairVerdict(balanced, crit)


def mixed_row_pair(p: int, n: int, i: int, k: int) -> tuple[QuadraticPolynomial, QuadraticPolynomial]:
    """Quadratics in j giving (top row i) - (bottom row k) of L on each half."""
    Q1 = QuadraticPolynomial(p, -1, 2 * i + 2 * n * k, -i * i - n * n * k * k)
    Q2 = QuadraticPolynomial(p, -n, 2 * n * i + 2 * n * k, -n * i * i - n * k * k)
    return Q1, Q2


# ---------------------------------------------------------------- explicit sets


@dataclass(frozen=True)
class ExplicitSets:
    p: int
    E: PointSet
    B: PointSet
    e_order: tuple
    b_order: tuple
    dot_matrix: ResidueMatrix


def _explicit_points(p: int, sign: int):
    e = [(i * i, 0, 2 * i, 0) for i in range(p)] + [(-i * i, 2 * i, 0, 1) for i in range(p)]
    b = [(-1, j, -j, j * j) for j in range(p)] + [(1, j, sign * j, -j * j) for j in range(p)]
    return (tuple(tuple(x % p for x in v) for v in e),
            tuple(tuple(x % p for x in v) for v in b))


def printed_explicit_points(p: int):
    """The sets with ``b_{j+p} = (1, j, -j, -j^2)``.  Their dot matrix mixes
    top row ``-i`` on the left half with top row ``i`` on the right half, so
    it is not log-Hadamard; kept for comparison only."""
    return _explicit_points(p, -1)


def explicit_counterexample_sets(p: int) -> ExplicitSets:
    """``e_i = (i^2,0,2i,0)``, ``e_{i+p} = (-i^2,2i,0,1)``, ``b_j = (-1,j,-j,j^2)``,
    ``b_{j+p} = (1,j,j,-j^2)``; the dot matrix is ``L(p, -1)`` with top row
    ``i`` moved to position ``-i``."""
    _odd_prime(p)
    if p % 4 != 3:
        raise WrongResidueClass(f"-1 is a square mod {p}; need p = 3 mod 4")
    e, b = _explicit_points(p, 1)
    E = PointSet((p,) * 4, e)
    B = PointSet((p,) * 4, b)
    L = dot_matrix(e, b, p)
    reindex = [(-i) % p for i in range(p)] + list(range(p, 2 * p))
    if (len(E) != 2 * p or not is_spectral_pair(E, B) or not is_log_hadamard(L)
            or L != brock_matrix(p, p - 1).L.permute(reindex, range(2 * p))):
        raise AssertionError("explicit sets fail their own checks")
    return ExplicitSets(p, E, B, e, b, L)


# ---------------------------------------------------------------- certificate


def _pair_claims(cert: Certificate, p: int, n: int, d: int, tag: str):
    bm = brock_matrix(p, n)
    r = rank_mod_p(bm.L)
    cert.add(f"{tag}: L({p},{n}) is log-Hadamard", is_log_hadamard(bm.L))
    cert.add(f"{tag}: rank L({p},{n}) = {r} <= {d}", r <= d)
    rec = factor_log_hadamard(bm.L)
    E, B = rec.E.embed(d), rec.B.embed(d)
    cert.add(f"{tag}: factorization reproduces L", dot_matrix(rec.e_order, rec.b_order, p) == bm.L)
    cert.add(f"{tag}: (E, B) is a spectral pair in Z_{p}^{d}", is_spectral_pair(E, B))
    cert.add(f"{tag}: |E| = {2 * p}", len(E) == 2 * p)
    cert.add(f"{tag}: {2 * p} does not divide {p}^{d}", p ** d % (2 * p) != 0)
    cert.add(f"{tag}: no tiling partner", find_tiling_partner(E) is None,
             "rejected by size divisibility before any search")
    cert.evidence[tag] = {"n": n, "rank": r, "E": [list(x) for x in E], "B": [list(x) for x in B]}


def verify_theorem_main2(p: int) -> Certificate:
    """Spectral non-tiling sets of size 2p in Z_p^5, and in Z_p^4 when p = 3 mod 4."""
    _odd_prime(p)
    cert = Certificate(f"Z_{p}^5 contains a spectral set of size {2 * p} that does not tile"
                       + (f"; so does Z_{p}^4" if p % 4 == 3 else ""))
    n = find_nonsquare(p)
    span = brock_spanning_vectors(p, n)
    cert.add(f"rows of L({p},{n}) lie in the span of the five vectors, 4 <= rank <= 5", span.holds,
             f"rank {span.rank}")
    bad = [(i, k) for i in range(p) for k in range(p)
           if not (v := is_balanced_quadratic_pair(*mixed_row_pair(p, n, i, k))).balanced
           or not v.discriminant_criterion]
    cert.add("every top/bottom row difference is a balanced quadratic pair", not bad,
             "checked by preimage counting and by D2(mu) = n D1(mu)")
    cert.notes.append("discriminant criterion used in the orientation a2 = n a1, "
                      "disc(Q2) = n disc(Q1); the other orientation would force n^2 = 1")
    _pair_claims(cert, p, n, 5, "Z_p^5")
    if p % 4 == 3:
        _pair_claims(cert, p, p - 1, 4, "Z_p^4")
        ex = explicit_counterexample_sets(p)
        cert.add("explicit sets form a spectral pair in Z_p^4", is_spectral_pair(ex.E, ex.B))
        cert.add("explicit dot matrix is log-Hadamard", is_log_hadamard(ex.dot_matrix))
    return cert
