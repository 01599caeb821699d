import itertools

import numpy as np
import pytest

from fuglede.crosscheck import random_spectral_pair, random_spectral_trial, spectral_conditions
from fuglede.errors import NotLogHadamard
from fuglede.field import PointSet, ResidueMatrix, all_elements, rank_mod_p
from fuglede.spectral import (
    butson_is_orthogonal,
    dephase,
    dot_matrix,
    factor_log_hadamard,
    is_dephased,
    is_log_hadamard,
    is_spectral_pair,
    is_special_dephased,
    special_dephase,
    spectral_size_check,
    spectrum_search,
)

from conftest import REFERENCE_6X6, pts


def brute_spectral(E, B):
    """Exponential matrix has orthogonal rows, computed with complex arithmetic."""
    p = E.p
    M = np.array([[np.exp(2j * np.pi * sum(a * b for a, b in zip(e, f)) / p) for f in B] for e in E])
    return len(E) == len(B) and np.allclose(M @ M.conj().T, len(E) * np.eye(len(E)))


def test_spectral_examples():
    line = pts(3, 2, [(0, 0), (1, 0), (2, 0)])
    assert is_spectral_pair(line, line)
    v = is_spectral_pair(line, pts(3, 2, [(0, 0), (0, 1), (0, 2)]))
    assert not v and v.violating_pair is not None
    whole = PointSet.whole((2, 2))
    assert is_spectral_pair(whole, whole)


def test_fourier_matrix_is_log_hadamard():
    for p in (2, 3, 5, 7):
        F = ResidueMatrix.from_function(p, p, p, lambda i, j: i * j)
        assert is_log_hadamard(F)
    assert is_log_hadamard(ResidueMatrix(3, REFERENCE_6X6))
    bad = ResidueMatrix(3, ((0, 0), (0, 1)))
    v = is_log_hadamard(bad)
    assert not v and v.witness is not None


@pytest.mark.parametrize("p,d", [(2, 2), (3, 2)])
def test_spectral_conditions_exhaustive(p, d):
    elements = all_elements((p,) * d)
    for size in (1, p, 2 * p):
        if size > len(elements):
            continue
        for E in itertools.combinations(elements, size):
            if (0,) * d not in E:
                continue
            Es = PointSet((p,) * d, E)
            for B in itertools.combinations(elements, size):
                if (0,) * d not in B:
                    continue
                Bs = PointSet((p,) * d, B)
                conds = spectral_conditions(Es, Bs)
                assert len(set(conds.values())) == 1
                assert conds["c"] == brute_spectral(Es, Bs)


@pytest.mark.parametrize("p,d", [(2, 4), (3, 3), (5, 2), (7, 2)])
def test_random_spectral_crosscheck(rng, p, d):
    assert all(random_spectral_trial(p, d, rng) for _ in range(40))


def test_structured_pairs_are_spectral(rng):
    for _ in range(30):
        E, B = random_spectral_pair(5, 3, rng, structured=True)
        assert brute_spectral(E, B) and butson_is_orthogonal(E, B)


def test_dephase():
    M = ResidueMatrix(3, ((1, 2, 0), (2, 1, 1), (0, 2, 2)))
    D = dephase(M)
    assert is_dephased(D)
    assert is_log_hadamard(M).is_log_hadamard == is_log_hadamard(D).is_log_hadamard
    assert rank_mod_p(D) <= rank_mod_p(M) + 1


def test_special_dephase_reference():
    M = ResidueMatrix(3, REFERENCE_6X6)
    S = special_dephase(M)
    assert is_special_dephased(S)
    assert rank_mod_p(S) == 4
    assert S.rows[1] == (0, 1, 2, 0, 1, 2) and S.col(1) == (0, 1, 2, 0, 1, 2)


def test_special_dephase_random_equivalents(rng):
    M = ResidueMatrix(3, REFERENCE_6X6)
    for _ in range(20):
        r, c = rng.permutation(6).tolist(), rng.permutation(6).tolist()
        shift_r, shift_c = rng.integers(0, 3, 6), rng.integers(0, 3, 6)
        N = ResidueMatrix(3, tuple(tuple(int(M[r[i], c[j]] + shift_r[i] + shift_c[j]) for j in range(6))
                                   for i in range(6)))
        S = special_dephase(N)
        assert is_special_dephased(S)
        assert rank_mod_p(S) == rank_mod_p(dephase(N))
    with pytest.raises(NotLogHadamard):
        special_dephase(ResidueMatrix(3, ((0, 0, 0), (0, 0, 0), (0, 1, 2))))


def test_factor_log_hadamard():
    M = ResidueMatrix(3, REFERENCE_6X6)
    rec = factor_log_hadamard(M)
    assert rec.dim == 4 == rank_mod_p(M)
    assert dot_matrix(rec.e_order, rec.b_order, 3) == M
    assert is_spectral_pair(rec.E, rec.B)
    F = ResidueMatrix.from_function(5, 5, 5, lambda i, j: i * j)
    assert factor_log_hadamard(F).dim == 1


def test_spectrum_search():
    line = pts(3, 2, [(0, 0), (1, 0), (2, 0)])
    B = spectrum_search(line)
    assert B is not None and is_spectral_pair(line, B)
    # every 3-point set in Z_3^2 misses a direction, so it is spectral
    assert spectrum_search(pts(3, 2, [(0, 0), (1, 0), (0, 1)])) is not None
    # these 5 points determine all 6 directions of Z_5^2
    assert spectrum_search(pts(5, 2, [(0, 0), (1, 0), (0, 1), (1, 1), (2, 3)])) is None
    assert spectrum_search(pts(3, 2, [(0, 0), (1, 0)])) is None


def test_spectrum_search_matches_brute_force():
    p, d = 2, 3
    elements = all_elements((p,) * d)
    for E in itertools.combinations(elements, 4):
        if (0,) * d not in E:
            continue
        Es = PointSet((p,) * d, E)
        brute = any(brute_spectral(Es, PointSet((p,) * d, B)) for B in itertools.combinations(elements, 4))
        assert (spectrum_search(Es) is not None) == brute


def test_size_check():
    assert spectral_size_check(1, 3, 3) and spectral_size_check(27, 3, 3)
    assert not spectral_size_check(12, 3, 3)          # in the gap (9, 27)
    assert not spectral_size_check(4, 3, 3)           # not divisible by 3
    assert spectral_size_check(6, 3, 3)
    assert not spectral_size_check(6, 2, 4)           # p = 2 needs 1, 2 or 4 | size
    assert spectral_size_check(8, 2, 4)
    assert not spectral_size_check(0, 3, 2)
