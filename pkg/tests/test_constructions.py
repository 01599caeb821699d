import itertools

import pytest

from fuglede.certificates import PROVEN
from fuglede.constructions import (
    QuadraticPolynomial,
    brock_matrix,
    brock_spanning_vectors,
    explicit_counterexample_sets,
    is_balanced_quadratic_pair,
    mixed_row_pair,
    printed_explicit_points,
    quad_preimage_count,
    verify_theorem_main2,
)
from fuglede.errors import NotNonsquare, UnsupportedPrime, WrongResidueClass
from fuglede.field import PointSet, is_square, rank_mod_p
from fuglede.spectral import dot_matrix, is_log_hadamard, is_spectral_pair

from conftest import brute_rank, complex_hadamard, naive_rank


def nonsquares(p):
    return [n for n in range(1, p) if not is_square(n, p)]


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_brock_matrix_is_hadamard_for_every_nonsquare(p):
    for n in nonsquares(p):
        L = brock_matrix(p, n).L
        assert L.nrows == 2 * p
        assert complex_hadamard(L.rows, p)


def test_brock_rank_table():
    expected = {(3, 2): 4, (7, 6): 4, (11, 10): 4}
    for p in (3, 5, 7, 11, 13):
        for n in nonsquares(p):
            r = rank_mod_p(brock_matrix(p, n).L)
            assert r == expected.get((p, n), 5)


def test_brock_rank_independent_oracles():
    assert brute_rank(brock_matrix(3, 2).L) == 4
    assert naive_rank(brock_matrix(5, 2).L) == 5
    assert naive_rank(brock_matrix(7, 6).L) == 4


def test_brock_errors():
    with pytest.raises(NotNonsquare):
        brock_matrix(5, 4)
    with pytest.raises(UnsupportedPrime):
        brock_matrix(2)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19])
def test_spanning_certificate(p):
    for n in nonsquares(p):
        c = brock_spanning_vectors(p, n)
        assert c.holds
        assert c.rank == (4 if n == p - 1 and p % 4 == 3 else 5)


def test_quadratic_preimages_match_enumeration():
    for p in (3, 5, 7):
        for a, b, c in itertools.product(range(1, p), range(p), range(p)):
            Q = QuadraticPolynomial(p, a, b, c)
            for mu in range(p):
                assert quad_preimage_count(Q, mu) == sum(Q(x) == mu for x in range(p))


def test_balanced_pair_examples():
    Q1 = QuadraticPolynomial(3, 1, 0, 0)
    Q2 = QuadraticPolynomial(3, 2, 0, 0)
    v = is_balanced_quadratic_pair(Q1, Q2)
    assert v.balanced and v.discriminant_criterion
    assert not is_balanced_quadratic_pair(Q1, Q1)


def test_discriminant_criterion_is_sufficient():
    p = 5
    for a1, b1, c1, a2, b2, c2 in itertools.product(range(1, p), range(p), range(p), range(1, p), range(p), range(p)):
        v = is_balanced_quadratic_pair(QuadraticPolynomial(p, a1, b1, c1), QuadraticPolynomial(p, a2, b2, c2))
        if v.discriminant_criterion:
            assert v.balanced


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_mixed_rows_give_balanced_pairs(p):
    for n in nonsquares(p):
        L = brock_matrix(p, n).L
        for i, k in itertools.product(range(p), repeat=2):
            Q1, Q2 = mixed_row_pair(p, n, i, k)
            diff = [(L[i, c] - L[p + k, c]) % p for c in range(2 * p)]
            assert diff == [Q1(j) for j in range(p)] + [Q2(j) for j in range(p)]
            assert is_balanced_quadratic_pair(Q1, Q2)


@pytest.mark.parametrize("p", [3, 7, 11, 19])
def test_explicit_sets(p):
    ex = explicit_counterexample_sets(p)
    assert len(ex.E) == len(ex.B) == 2 * p
    assert is_spectral_pair(ex.E, ex.B)
    assert complex_hadamard(dot_matrix(ex.e_order, ex.b_order, p).rows, p)
    assert (p ** 4) % (2 * p) != 0


@pytest.mark.parametrize("p", [3, 7, 11, 19])
def test_printed_variant_is_not_spectral(p):
    e, b = printed_explicit_points(p)
    assert not is_spectral_pair(PointSet((p,) * 4, e), PointSet((p,) * 4, b))
    assert not is_log_hadamard(dot_matrix(e, b, p))


def test_explicit_sets_need_p_3_mod_4():
    with pytest.raises(WrongResidueClass):
        explicit_counterexample_sets(5)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_certificate(p):
    cert = verify_theorem_main2(p)
    assert cert.verdict == PROVEN, cert.failed()
    assert ("Z_p^4" in cert.evidence) == (p % 4 == 3)
    E = cert.evidence["Z_p^5"]["E"]
    assert len(E) == 2 * p and all(len(x) == 5 for x in E)
