"""Randomized agreement checks between equivalent characterizations.

Each trial draws a pair that is a tiling (or spectral) pair by construction
half of the time and an unstructured random pair otherwise, then compares
all criteria.
"""

from __future__ import annotations

import numpy as np

from .field import PointSet, all_elements, inverse, random_invertible
from .spectral import butson_is_orthogonal, dot_matrix, is_log_hadamard, is_spectral_pair
from .tiling import tiling_conditions_crosscheck


def _random_subset(elements, size, rng):
    idx = rng.choice(len(elements), size=size, replace=False)
    return [elements[i] for i in sorted(idx)]


def _translate(points, t, p):
    return [tuple((a + b) % p for a, b in zip(x, t)) for x in points]


def _span_coords(G, cols, coeffs, p):
    d = G.nrows
    return tuple(sum(G[r, c] * a for c, a in zip(cols, coeffs)) % p for r in range(d))


def random_tiling_pair(p: int, d: int, rng, structured: bool):
    k = int(rng.integers(0, d + 1))
    elements = all_elements((p,) * d)
    if not structured:
        E = _random_subset(elements, p ** k, rng)
        A = _random_subset(elements, p ** (d - k), rng)
        return PointSet((p,) * d, E), PointSet((p,) * d, A)
    # E = graph of a random map from span(G[:, :k]) into V = span(G[:, k:]); A = V
    G = random_invertible(p, d, rng)
    wcols, vcols = list(range(k)), list(range(k, d))
    coeff_w = all_elements((p,) * k)
    E = []
    for c in coeff_w:
        f = rng.integers(0, p, size=d - k).tolist()
        w = _span_coords(G, wcols, c, p)
        v = _span_coords(G, vcols, f, p)
        E.append(tuple((a + b) % p for a, b in zip(w, v)))
    A = [_span_coords(G, vcols, c, p) for c in all_elements((p,) * (d - k))]
    E = _translate(E, rng.integers(0, p, size=d).tolist(), p)
    A = _translate(A, rng.integers(0, p, size=d).tolist(), p)
    return PointSet((p,) * d, E), PointSet((p,) * d, A)


def random_tiling_trial(p: int, d: int, rng) -> bool:
    E, A = random_tiling_pair(p, d, rng, bool(rng.integers(0, 2)))
    return tiling_conditions_crosscheck(E, A).unanimous


def random_spectral_pair(p: int, d: int, rng, structured: bool):
    elements = all_elements((p,) * d)
    if not structured:
        size = int(rng.integers(1, min(p ** d, 2 * p) + 1))
        return (PointSet((p,) * d, _random_subset(elements, size, rng)),
                PointSet((p,) * d, _random_subset(elements, size, rng)))
    # coordinate subspace paired with itself, moved by G and G^-T
    k = int(rng.integers(0, d + 1))
    G = random_invertible(p, d, rng)
    Ginv_t = inverse(G).transpose()
    base = [tuple(c) + (0,) * (d - k) for c in all_elements((p,) * k)]
    E = _translate([G.apply(x) for x in base], rng.integers(0, p, size=d).tolist(), p)
    B = _translate([Ginv_t.apply(x) for x in base], rng.integers(0, p, size=d).tolist(), p)
    return PointSet((p,) * d, E), PointSet((p,) * d, B)


def spectral_conditions(E: PointSet, B: PointSet) -> dict:
    return {
        "c": bool(is_spectral_pair(E, B)),
        "e": butson_is_orthogonal(E, B),
        "g": bool(is_log_hadamard(dot_matrix(E, B))),
    }


def random_spectral_trial(p: int, d: int, rng) -> bool:
    E, B = random_spectral_pair(p, d, rng, bool(rng.integers(0, 2)))
    return len(set(spectral_conditions(E, B).values())) == 1
