import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuglede.errors import NoNonsquare, NotPrime, SingularMatrix, BudgetExceeded
from fuglede.field import (
    PointSet,
    ResidueMatrix,
    Subspace,
    affine_image,
    enumerate_subspaces,
    find_nonsquare,
    gaussian_binomial,
    group_tables,
    inverse,
    is_prime,
    nullspace,
    orthogonal_complement,
    rank_mod_p,
    solve_mod_p,
)

from conftest import REFERENCE_6X6, brute_rank, pts


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("p,n", [(3, 2), (7, 3), (5, 2), (13, 2)])
def test_find_nonsquare(p, n):
    squares = {x * x % p for x in range(p)}
    assert find_nonsquare(p) == n == min(x for x in range(1, p) if x not in squares)


def test_find_nonsquare_errors():
    with pytest.raises(NoNonsquare):
        find_nonsquare(2)
    with pytest.raises(NotPrime):
        find_nonsquare(9)


def test_rank_examples():
    assert rank_mod_p(ResidueMatrix.identity(5, 5)) == 5
    assert rank_mod_p(ResidueMatrix(3, REFERENCE_6X6)) == 4
    for p in (3, 5, 7):
        assert rank_mod_p(ResidueMatrix.from_function(p, p, p, lambda i, j: i * j)) == 1


matrices = st.integers(2, 4).flatmap(lambda n: st.integers(1, 4).flatmap(
    lambda m: st.lists(st.lists(st.integers(0, 2), min_size=m, max_size=m), min_size=n, max_size=n)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_row_space_size(rows):
    M = ResidueMatrix(3, tuple(map(tuple, rows)))
    assert rank_mod_p(M) == brute_rank(M) == rank_mod_p(M.transpose())


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=9, max_size=9), st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_solve_and_inverse(entries, b):
    A = ResidueMatrix(5, (tuple(entries[0:3]), tuple(entries[3:6]), tuple(entries[6:9])))
    if rank_mod_p(A) < 3:
        with pytest.raises(SingularMatrix):
            inverse(A)
        return
    x = solve_mod_p(A, b)
    assert A.apply(x) == tuple(v % 5 for v in b)
    assert A @ inverse(A) == ResidueMatrix.identity(5, 3)


def test_nullspace_dimension():
    A = ResidueMatrix(3, ((1, 1, 1), (0, 1, 2)))
    ns = nullspace(A)
    assert len(ns) == 1
    assert all(A.apply(v) == (0, 0) for v in ns)


def test_orthogonal_complement_examples():
    assert orthogonal_complement(Subspace.span(3, 2, [(1, 0)])) == Subspace.span(3, 2, [(0, 1)])
    assert orthogonal_complement(Subspace.span(5, 3, [])).dim == 3
    V = orthogonal_complement(Subspace.span(2, 3, [(1, 1, 1)]))
    assert V == Subspace.span(2, 3, [(1, 1, 0), (0, 1, 1)])


@pytest.mark.parametrize("p,d,k,count", [(3, 2, 1, 4), (2, 3, 2, 7), (5, 3, 0, 1), (3, 3, 1, 13), (2, 4, 2, 35)])
def test_enumerate_subspaces_counts(p, d, k, count):
    subs = enumerate_subspaces(p, d, k)
    assert len(subs) == count == gaussian_binomial(d, k, p)
    assert len({frozenset(V.elements()) for V in subs}) == count
    assert all(V.dim == k for V in subs)


def test_enumerate_subspaces_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_subspaces(5, 6, 3, budget=100)


def test_affine_image():
    E = pts(3, 2, [(0, 0), (1, 0)])
    assert affine_image(E, ResidueMatrix.identity(3, 2), (0, 0)) == E
    swap = ResidueMatrix(3, ((0, 1), (1, 0)))
    assert affine_image(E, swap, (0, 0)) == pts(3, 2, [(0, 0), (0, 1)])


def test_pointset_validation():
    with pytest.raises(ValueError):
        PointSet((3, 3), ((0, 0), (0, 0)))
    E = PointSet((2, 3), ((1, 2), (0, 0)))
    assert E.points == ((0, 0), (1, 2))
    assert not E.is_homogeneous
    F = pts(3, 2, [(1, 2)]).embed(4)
    assert F.points == ((1, 2, 0, 0),) and F.moduli == (3,) * 4


def test_group_tables_consistent():
    t = group_tables(3, 2)
    for x in range(t.size):
        for y in range(t.size):
            a, b = t.point(x), t.point(y)
            assert t.point(t.sub[x, y]) == tuple((u - v) % 3 for u, v in zip(a, b))
            assert t.point(t.add[x, y]) == tuple((u + v) % 3 for u, v in zip(a, b))
            assert t.dot[x, y] == sum(u * v for u, v in zip(a, b)) % 3
    with pytest.raises(BudgetExceeded):
        group_tables(5, 6)


def test_subspace_membership(rng):
    for _ in range(20):
        vecs = [tuple(rng.integers(0, 5, 4).tolist()) for _ in range(2)]
        V = Subspace.span(5, 4, vecs)
        brute = {tuple((a * x + b * y) % 5 for x, y in zip(*vecs)) for a, b in itertools.product(range(5), repeat=2)}
        assert set(V.elements()) == brute
        assert all(v in V for v in brute)
