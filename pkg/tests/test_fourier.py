import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuglede.errors import DimensionNotMultipleOfP, ZeroFrequency
from fuglede.field import PointSet, all_elements
from fuglede.fourier import (
    balanced_certificate,
    cone_partition,
    direction_sets,
    ft_is_zero,
    ft_value,
    is_balanced,
    missing_direction_projection,
    zero_flags,
)

from conftest import brute_ft_zero, pts

LINE = [(0, 0), (1, 0), (2, 0)]


def test_ft_is_zero_examples():
    whole = PointSet.whole((3, 3))
    assert all(ft_is_zero(whole, m) for m in all_elements((3, 3)) if any(m))
    E = pts(3, 2, LINE)
    assert ft_is_zero(E, (1, 0))
    assert not ft_is_zero(E, (0, 1))
    single = pts(5, 2, [(2, 3)])
    assert not any(ft_is_zero(single, m) for m in all_elements((5, 5)) if any(m))
    with pytest.raises(ZeroFrequency):
        ft_is_zero(E, (0, 0))


def test_ft_value_examples():
    assert abs(ft_value(PointSet.whole((3, 3)), (0, 0)) - 1.0) < 1e-12
    assert abs(ft_value(PointSet.whole((3, 3)), (1, 2))) < 1e-12
    assert abs(ft_value(PointSet.homogeneous(2, 1, [(0,), (1,)]), (1,))) < 1e-12


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (2, 3), (3, 3)]), st.data())
def test_counting_agrees_with_complex_sum(pd, data):
    p, d = pd
    elements = all_elements((p,) * d)
    chosen = data.draw(st.sets(st.sampled_from(elements), min_size=1, max_size=min(len(elements), 12)))
    E = PointSet((p,) * d, tuple(chosen))
    flags = zero_flags(E)
    for m in elements:
        if any(m):
            assert ft_is_zero(E, m) == brute_ft_zero(E, m) == flags[m]
            assert (abs(ft_value(E, m)) < 1e-9) == flags[m]


def test_cone_partition_examples():
    c = cone_partition(PointSet.whole((3, 3)))
    assert len(c.zero_cone) == 8 and not c.support_cone
    c = cone_partition(pts(3, 2, LINE))
    assert c.zero_cone == {m for m in all_elements((3, 3)) if m[0] != 0}
    assert len(c.zero_cone) == 6
    assert not cone_partition(pts(3, 2, [(1, 1)])).zero_cone


def test_direction_sets_examples():
    D, C = direction_sets(pts(3, 2, [(0, 0), (1, 0)]))
    assert D == C == {(1, 0), (2, 0)}
    D, C = direction_sets(pts(3, 2, [(1, 2)]))
    assert not D and not C


def test_large_sets_determine_all_directions(rng):
    for p, d in ((3, 2), (3, 3), (5, 2), (2, 4)):
        elements = all_elements((p,) * d)
        for _ in range(15):
            idx = rng.choice(len(elements), size=p ** (d - 1) + 1, replace=False)
            E = PointSet((p,) * d, tuple(elements[i] for i in idx))
            _, cone = direction_sets(E)
            assert len(cone) == p ** d - 1


def test_projection_examples():
    chain = missing_direction_projection(pts(3, 2, LINE))
    assert len(chain.steps) == 1 and chain.steps[0].line == (0, 1)
    assert chain.dim == 1 and len(chain.image) == 3
    assert not missing_direction_projection(PointSet.whole((3, 3))).steps


def test_projection_dimension_bound(rng):
    # a set larger than p^(d-s) lands in dimension >= d - s + 1
    p, d = 3, 3
    elements = all_elements((p,) * d)
    for _ in range(30):
        size = int(rng.integers(2, 15))
        idx = rng.choice(len(elements), size=size, replace=False)
        E = PointSet((p,) * d, tuple(elements[i] for i in idx))
        chain = missing_direction_projection(E)
        assert len(set(chain.image)) == size
        for s in range(d + 1):
            if size > p ** (d - s):
                assert chain.dim >= d - s + 1


def test_balanced_examples():
    assert is_balanced((0, 1, 2), 3)
    assert not is_balanced((0, 0, 1), 3)
    assert is_balanced((0, 1, 2, 0, 1, 2), 3)
    c = balanced_certificate((0, 1, 2), 3)
    assert c.sigma_values == (0, 2, 0) and c.passed
    assert balanced_certificate((0, 1, 2, 3, 4), 5).sigma_values[3] == 4
    bad = balanced_certificate((0, 0, 0), 3)
    assert not bad.passed and bad.first_mismatch == 2
    with pytest.raises(DimensionNotMultipleOfP):
        balanced_certificate((0, 1), 3)


def test_certificate_matches_balance_exhaustively():
    for v in itertools.product(range(3), repeat=6):
        assert balanced_certificate(v, 3).passed == is_balanced(v, 3)
    for v in itertools.product(range(2), repeat=8):
        assert balanced_certificate(v, 2).passed == is_balanced(v, 2)


def test_certificate_polynomial_identity(rng):
    # prod (t - v_i) == (t^p - t)^m exactly when v is balanced; compare coefficients
    p = 5
    for _ in range(200):
        v = rng.integers(0, p, size=10).tolist()
        poly = np.array([1], dtype=np.int64)
        for x in v:
            poly = np.convolve(poly, [1, -x]) % p
        base = np.zeros(p + 1, dtype=np.int64)
        base[0], base[p - 1] = 1, p - 1
        target = np.array([1], dtype=np.int64)
        for _ in range(2):
            target = np.convolve(target, base) % p
        assert (poly.tolist() == target.tolist()) == is_balanced(v, p) == balanced_certificate(v, p).passed
