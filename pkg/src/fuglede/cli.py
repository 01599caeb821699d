"""Command-line interface.

Exit codes: 0 the property holds / Proven, 1 refuted, 2 budget or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructions, davey, search, spectral, tiling
from .certificates import BUDGET_EXCEEDED, PROVEN
from .errors import BudgetExceeded, DocumentError, FugledeError
from .field import rank_mod_p
from .fourier import balanced_certificate, is_balanced
from .io import (
    canonical_json,
    load_json,
    matrix_document,
    parse_matrix_document,
    parse_set_document,
    parse_vector,
    set_document,
)

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


def _emit(obj):
    sys.stdout.write(canonical_json(obj) + "\n")


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise DocumentError(f"{name} must be an integer, got {raw!r}")


def _load_set(path):
    return parse_set_document(load_json(path), path)


def _load_matrix(path):
    doc = load_json(path)
    # accept a bare matrix document or any document carrying one
    if isinstance(doc, dict) and "matrix" in doc and "rows" not in doc:
        doc = doc["matrix"]
    return parse_matrix_document(doc, path)


def _load_int_matrix(text):
    doc = load_json("-") if text == "-" else json.loads(text)
    if isinstance(doc, dict):
        doc = doc.get("entries", doc.get("rows"))
    if not isinstance(doc, list) or not all(isinstance(r, list) for r in doc):
        raise DocumentError("expected a list of rows")
    return doc


# ---------------------------------------------------------------- commands


def cmd_check_tiling(args):
    E, A = _load_set(args.set), _load_set(args.partner)
    v = tiling.is_tiling_pair(E, A)
    _emit({"is_tiling": v.is_tiling,
           "multiplicity_histogram": {str(k): c for k, c in v.multiplicity_histogram.items()},
           "witness": list(v.witness) if v.witness else None})
    return EXIT_OK if v else EXIT_REFUTED


def cmd_check_spectral(args):
    E, B = _load_set(args.set), _load_set(args.spectrum)
    v = spectral.is_spectral_pair(E, B)
    _emit({"is_spectral": v.is_spectral,
           "violating_pair": [list(x) for x in v.violating_pair] if v.violating_pair else None})
    return EXIT_OK if v else EXIT_REFUTED


def cmd_hadamard(args):
    M = _load_matrix(args.matrix)
    if args.action == "check":
        v = spectral.is_log_hadamard(M)
        _emit({"is_log_hadamard": v.is_log_hadamard, "witness": list(v.witness) if v.witness else None})
        return EXIT_OK if v else EXIT_REFUTED
    if args.action == "rank":
        _emit(rank_mod_p(M))
        return EXIT_OK
    if args.action == "dephase":
        _emit(matrix_document(spectral.dephase(M)))
        return EXIT_OK
    if args.action == "special-dephase":
        _emit(matrix_document(spectral.special_dephase(M)))
        return EXIT_OK
    rec = spectral.factor_log_hadamard(M)
    _emit({"rank": rec.dim, "E": set_document(rec.E), "B": set_document(rec.B),
           "e_order": [list(x) for x in rec.e_order], "b_order": [list(x) for x in rec.b_order]})
    return EXIT_OK


def cmd_brock(args):
    n = args.n
    if args.rank4:
        if args.p % 4 != 3:
            raise FugledeError(f"--rank4 needs p = 3 mod 4 (got {args.p})")
        n = args.p - 1
    bm = constructions.brock_matrix(args.p, n)
    cert = constructions.brock_spanning_vectors(args.p, bm.n)
    _emit({"p": bm.p, "n": bm.n, "rows": bm.L.to_lists(), "rank": cert.rank,
           "certificate": {"vectors": [list(v) for v in cert.vectors],
                           "rows_in_span": cert.rows_in_span,
                           "triple_independent": cert.triple_independent,
                           "square_outside_span": cert.square_outside_span,
                           "holds": cert.holds}})
    return EXIT_OK if cert.holds else EXIT_REFUTED


def cmd_counterexample(args):
    cert = constructions.verify_theorem_main2(args.p)
    out = {"certificate": cert.to_dict()}
    if args.p % 4 == 3:
        ex = constructions.explicit_counterexample_sets(args.p)
        out["E"] = set_document(ex.E, "E")
        out["B"] = set_document(ex.B, "B")
    _emit(out)
    return EXIT_OK if cert.verdict == PROVEN else EXIT_REFUTED


def cmd_davey(args):
    if args.action == "check":
        v = davey.is_davey(_load_int_matrix(args.matrix))
        _emit({"is_davey": v.is_davey, "weight": v.weight,
               "violation": list(v.violation) if v.violation else None})
        return EXIT_OK if v else EXIT_REFUTED
    if args.action == "decompose":
        d = davey.decompose_davey(_load_int_matrix(args.matrix))
        _emit({"p": d.p, "weight": d.weight, "coefficients": list(d.coefficients)})
        return EXIT_OK
    if args.action == "enumerate":
        mats = davey.enumerate_davey(args.p, args.m, args.max_nodes)
        _emit({"p": args.p, "weight": args.m, "count": len(mats), "matrices": [D.to_lists() for D in mats]})
        return EXIT_OK
    X = davey.davey_from_rows(parse_vector(args.x), parse_vector(args.y), args.p)
    _emit({"p": X.p, "weight": X.weight, "entries": X.to_lists()})
    return EXIT_OK


def _report_exit(rep):
    _emit(rep.to_dict())
    return {PROVEN: EXIT_OK, BUDGET_EXCEEDED: EXIT_USAGE}.get(rep.verdict, EXIT_REFUTED)


def cmd_fuglede(args):
    if args.action == "brute":
        rep = search.brute_force_fuglede(args.p, args.d, args.max_nodes, args.max_seconds,
                                         args.max_sets)
    else:
        rep = search.verify_fuglede_dim3(args.p, args.attempt, args.max_nodes, args.max_seconds)
    return _report_exit(rep)


def cmd_balanced(args):
    v = parse_vector(args.vector)
    if args.action == "check":
        ok = is_balanced(v, args.p)
        _emit({"is_balanced": ok})
        return EXIT_OK if ok else EXIT_REFUTED
    c = balanced_certificate(v, args.p)
    _emit({"p": c.p, "m": c.m, "sigma": list(c.sigma_values), "expected": list(c.expected),
           "passed": c.passed, "first_mismatch": c.first_mismatch})
    return EXIT_OK if c.passed else EXIT_REFUTED


def cmd_reproduce(args):
    from .reproduce import render_markdown, run_all
    results = run_all()
    text = render_markdown(results)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_REFUTED


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-nodes", type=int, default=None,
                        help="search node budget (env FUGLEDE_MAX_NODES)")
    budget.add_argument("--max-seconds", type=float, default=None, help="wall-clock budget for searches")
    budget.add_argument("--threads", type=int, default=None,
                        help="worker cap (env FUGLEDE_THREADS); searches currently run on one thread")

    ap = argparse.ArgumentParser(prog="fuglede", description="Tiling and spectral sets in Z_p^d.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-tiling", parents=[budget], help="is (E, A) a tiling pair")
    s.add_argument("--set", required=True)
    s.add_argument("--partner", required=True)
    s.set_defaults(func=cmd_check_tiling)

    s = sub.add_parser("check-spectral", parents=[budget], help="is (E, B) a spectral pair")
    s.add_argument("--set", required=True)
    s.add_argument("--spectrum", required=True)
    s.set_defaults(func=cmd_check_spectral)

    s = sub.add_parser("hadamard", parents=[budget], help="log-Hadamard matrix tools")
    s.add_argument("action", choices=["check", "dephase", "special-dephase", "rank", "factor"])
    s.add_argument("--matrix", default="-", help="matrix document (default: stdin)")
    s.set_defaults(func=cmd_hadamard)

    s = sub.add_parser("brock", parents=[budget], help="the 2p x 2p log-Hadamard matrix L(p, n)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, default=None, help="nonsquare (default: the least one)")
    s.add_argument("--rank4", action="store_true", help="use n = p - 1 (needs p = 3 mod 4)")
    s.set_defaults(func=cmd_brock)

    s = sub.add_parser("counterexample", parents=[budget], help="spectral sets of size 2p that do not tile")
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("davey", parents=[budget], help="Davey matrices")
    s.add_argument("action", choices=["check", "decompose", "enumerate", "from-rows"])
    s.add_argument("--matrix", default="-", help="JSON list of rows, or - for stdin")
    s.add_argument("--p", type=int, default=3)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--x", help="first row, e.g. 0,1,2,0,1,2")
    s.add_argument("--y", help="second row")
    s.set_defaults(func=cmd_davey)

    s = sub.add_parser("fuglede", parents=[budget], help="exhaustive Fuglede verification")
    s.add_argument("action", choices=["brute", "dim3"])
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--max-sets", type=int, default=search.DEFAULT_MAX_SETS)
    s.add_argument("--attempt", action="store_true", help="search for p >= 5 without asserting a result")
    s.set_defaults(func=cmd_fuglede)

    s = sub.add_parser("balanced", parents=[budget], help="balanced vectors over Z_p")
    s.add_argument("action", choices=["check", "certificate"])
    s.add_argument("--vector", required=True)
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_balanced)

    s = sub.add_parser("reproduce-paper", parents=[budget], help="run every check, write a markdown report")
    s.add_argument("--output", default="-")
    s.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.max_nodes is None:
            args.max_nodes = _env_int("FUGLEDE_MAX_NODES", search.DEFAULT_MAX_NODES)
        if args.threads is None:
            args.threads = _env_int("FUGLEDE_THREADS", 1)
        if args.command == "davey" and args.action == "from-rows" and (args.x is None or args.y is None):
            ap.error("davey from-rows needs --x and --y")
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FugledeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
