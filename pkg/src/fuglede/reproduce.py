"""Run every reproducibility check and render a markdown report."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .constructions import (
    brock_matrix,
    explicit_counterexample_sets,
    factor_log_hadamard,
    verify_theorem_main2,
)
from .davey import decompose_davey, enumerate_davey
from .field import PointSet, ResidueMatrix, is_square, rank_mod_p
from .fourier import balanced_certificate, elementary_symmetric, is_balanced
from .search import brute_force_fuglede, enumerate_special_dephased, verify_fuglede_dim3
from .spectral import is_log_hadamard, is_spectral_pair
from .tiling import is_k_tiling_pair, is_tiling_pair, k_tile_with_hyperplane, lift_to_product_tiling

# Expected canonical special dephased 6 x 6 log-Hadamard matrix over Z_3.
REFERENCE_6X6 = (
    (0, 0, 0, 0, 0, 0),
    (0, 1, 2, 0, 1, 2),
    (0, 2, 1, 1, 0, 2),
    (0, 0, 2, 1, 2, 1),
    (0, 1, 1, 2, 2, 0),
    (0, 2, 0, 2, 1, 1),
)


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float


def _nonsquares(p):
    return [n for n in range(1, p) if not is_square(n, p)]


def check_brock():
    bad = [(p, n) for p in (3, 5, 7, 11, 13) for n in _nonsquares(p)
           if not is_log_hadamard(brock_matrix(p, n).L)]
    return not bad, f"failures: {bad}" if bad else "all L(p, n) log-Hadamard"


def check_ranks():
    ranks = {(p, n): rank_mod_p(brock_matrix(p, n).L) for p in (3, 5, 7, 11, 13) for n in _nonsquares(p)}
    in_range = all(r in (4, 5) for r in ranks.values())
    four = all(ranks[(p, p - 1)] == 4 for p in (3, 7, 11))
    return in_range and four, f"ranks {ranks}"


def check_counterexamples():
    verdicts = {p: verify_theorem_main2(p).verdict for p in (3, 5, 7, 11)}
    return all(v == "Proven" for v in verdicts.values()), f"{verdicts}"


def check_explicit():
    out = {}
    for p in (3, 7):
        ex = explicit_counterexample_sets(p)
        out[p] = bool(is_spectral_pair(ex.E, ex.B)) and bool(is_log_hadamard(ex.dot_matrix))
    return all(out.values()), f"{out}"


def check_dim3():
    res = enumerate_special_dephased(3, 2)
    mats = [(M.rows, r) for M, r in res.matrices]
    unique = len(mats) == 1 and mats[0][0] == REFERENCE_6X6 and mats[0][1] == 4
    rep = verify_fuglede_dim3(3)
    return unique and rep.verdict == "Proven", f"{len(mats)} canonical matrix, rank {mats[0][1] if mats else None}, dim3 {rep.verdict}"


def check_brute():
    reps = {pd: brute_force_fuglede(*pd) for pd in ((2, 2), (3, 2), (2, 3))}
    ok = all(r.verdict == "Proven" for r in reps.values())
    ok &= reps[(2, 3)].details["per_size"][6]["spectral"] == 0
    return ok, "; ".join(f"{pd}: {r.verdict}, spectral sizes {r.details['spectral_sizes']}" for pd, r in reps.items())


def check_davey():
    ok = all(len(enumerate_davey(2, m)) == (1 - m % 2) for m in range(9))
    ok &= all(len(enumerate_davey(3, m)) == (m + 1) * (m + 2) // 2 for m in range(6))
    ok &= all(decompose_davey(D).reconstruct() == D.entries
              for p, top in ((2, 8), (3, 5)) for m in range(top + 1) for D in enumerate_davey(p, m)
              if p == 3 or m % 2 == 0)
    return ok, "counts and reconstruction"


def check_balanced(seed: int = 0):
    import itertools
    ok = all(balanced_certificate(v, 3).passed == is_balanced(v, 3)
             for v in itertools.product(range(3), repeat=6))
    rng = np.random.default_rng(seed)
    for _ in range(10_000):
        v = rng.integers(0, 5, size=10).tolist()
        ok &= balanced_certificate(v, 5).passed == is_balanced(v, 5)
    primes = [p for p in range(2, 32) if all(p % q for q in range(2, p))]
    ok &= all(elementary_symmetric(list(range(p)), p)[p - 2] == p - 1 for p in primes)
    return ok, "3^6 exhaustive, 10^4 random over Z_5, Wilson for p <= 31"


def check_equivalences(seed: int = 0, trials: int = 500):
    from .crosscheck import random_spectral_trial, random_tiling_trial
    rng = np.random.default_rng(seed)
    bad = 0
    for p, d in ((3, 2), (3, 3), (5, 2)):
        for _ in range(trials):
            bad += not random_tiling_trial(p, d, rng)
            bad += not random_spectral_trial(p, d, rng)
    return bad == 0, f"{bad} disagreements"


def check_lifting():
    out = {}
    for p in (3, 5, 7, 11):
        rec = factor_log_hadamard(brock_matrix(p).L)
        E = rec.E.embed(5)
        sets = [E] + ([explicit_counterexample_sets(p).E] if p % 4 == 3 else [])
        ok = True
        for S in sets:
            ht = k_tile_with_hyperplane(S)
            ok &= ht.k == 2 and is_k_tiling_pair(S, ht.partner, 2)
            lift = lift_to_product_tiling(S, force_lift=True)
            ok &= lift.m == 2 and bool(is_tiling_pair(lift.lifted, lift.partner))
            ok &= sorted(x[:-1] for x in lift.lifted) == list(S.points)
        out[p] = ok
    return all(out.values()), f"{out}"


def check_gap():
    out = {}
    for p, d in ((3, 2), (2, 3)):
        rep = brute_force_fuglede(p, d)
        gap = [s for s, r in rep.details["per_size"].items() if p ** (d - 1) < s < p ** d and r["spectral"]]
        out[(p, d)] = rep.details["size_filter"] == "none" and not gap
    return all(out.values()), f"{out}"


CHECKS = [
    (1, "L(p, n) is log-Hadamard", check_brock),
    (2, "rank of L(p, n)", check_ranks),
    (3, "spectral non-tiling sets of size 2p", check_counterexamples),
    (4, "explicit sets in Z_p^4", check_explicit),
    (5, "Fuglede in Z_3^3 via the unique 6 x 6 matrix", check_dim3),
    (6, "brute-force Fuglede in small groups", check_brute),
    (7, "Davey matrix structure", check_davey),
    (8, "balanced-vector certificate", check_balanced),
    (9, "equivalence cross-checks", check_equivalences),
    (10, "k-tiling and lifting", check_lifting),
    (11, "size gap", check_gap),
]


def run_all() -> list[CheckResult]:
    results = []
    for number, title, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:   # a crash is a failed check, reported as such
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(number, title, bool(ok), detail, time.perf_counter() - t0))
    return results


def render_markdown(results) -> str:
    lines = ["# Reproduction report", "", "| # | check | result | time (s) |", "|---|---|---|---|"]
    for r in results:
        lines.append(f"| {r.number} | {r.title} | {'PASS' if r.passed else 'FAIL'} | {r.seconds:.2f} |")
    lines += ["", "## Details", ""]
    for r in results:
        lines.append(f"- **{r.number}. {r.title}**: {r.detail}")
    return "\n".join(lines) + "\n"
