"""Command-line interface: ``erasureframes <command> ...``.

Reports are JSON documents on stdout (or ``--report PATH``).  Exit codes:
0 success, 1 failed verification, 2 invalid parameters, 3 unreadable or
malformed input, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

import numpy as np

from . import catalog, erasures, report, seidel, verify
from .constructions import ConstructionRecipe, Kind
from .errors import (
    BudgetExceeded,
    FrameError,
    InvalidInput,
    InvalidParameters,
    NotASignature,
    NotReconstructible,
    NotStronglyRegular,
    SignatureParseError,
    SizeLimit,
    Unavailable,
)
from .frames import frame_from_signature, grammian_from_signature, signature_parameters

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4


class _InputError(Exception):
    pass


def _parse_p(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'inf', got {text!r}") from None
    return value


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        Q = catalog.parse_signature_text(data)
    except SignatureParseError as exc:
        raise _InputError(f"{path}: {exc}") from None
    return Q, {"path": path, "fingerprint": report.fingerprint(data)}


def _parameters(Q) -> dict:
    par = signature_parameters(Q)
    return {"n": par.n, "k": par.k, "mu": par.mu, "rho1": par.rho1, "rho2": par.rho2, "c": par.c}


def _document(args, command: dict, input_info, parameters, results, exact, started) -> dict:
    doc = {"command": command}
    if input_info is not None:
        doc["input"] = input_info
    if parameters is not None:
        doc["parameters"] = parameters
    doc["results"] = results
    doc["exact"] = exact
    if not args.no_timing:
        doc["timing"] = {"seconds": time.perf_counter() - started}
    return doc


def _emit(args, doc: dict) -> None:
    text = report.dumps(doc)
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_construct(args) -> int:
    kind = Kind(args.kind)
    if kind is Kind.BASIS_REPETITION:
        raise InvalidParameters("basis repetition frames are not 2-uniform and have no signature matrix")
    if kind is Kind.PALEY_CONFERENCE:
        size = args.p
        flag = "--p"
    elif kind in (Kind.GRAPH_HADAMARD_PLUS, Kind.GRAPH_HADAMARD_MINUS):
        size = args.order
        flag = "--order"
    else:
        size = args.n
        flag = "--n"
    if size is None:
        raise InvalidParameters(f"--kind {kind.value} requires {flag}")
    Q = ConstructionRecipe(kind, size).build()
    text = catalog.emit_signature_text(Q)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    started = time.perf_counter()
    Q, info = _load(args.sig)
    params = _parameters(Q)
    n, k, mu = params["n"], params["k"], params["mu"]
    G = seidel.graph_from_signature(Q)
    e3, o3 = seidel.count_E3_O3(G)
    alpha = seidel.regular_two_graph_alpha(G)
    try:
        red = seidel.srg_reduction(G, 0)
        srg = {"v": red.v, "c": red.c, "p": red.p, "q": red.q}
    except NotStronglyRegular as exc:
        srg = {"error": str(exc)}
    try:
        e3_formula = seidel.count_E3_formula(n, k)
    except InvalidParameters:
        e3_formula = None
    results = {
        "alpha": alpha,
        "alpha_relation_holds": alpha is not None and -2 * alpha == 2 + mu - n,
        "srg_reduction": srg,
        "E3": e3,
        "O3": o3,
        "E3_formula": e3_formula,
        "bipartite_size_bound": erasures.bound_max_bipartite_size(n, k),
        "full_erasure_threshold": erasures.full_erasure_threshold(n, k),
        "e2_inf": k / n + params["c"],
        "e3_inf": erasures.e_3_inf_two_uniform(n, k) if k < n - 1 else None,
    }
    _emit(args, _document(args, {"name": "analyze"}, info, params, results, True, started))
    return EXIT_OK


def cmd_erasures(args) -> int:
    started = time.perf_counter()
    Q, info = _load(args.sig)
    params = _parameters(Q)
    P = grammian_from_signature(Q)
    if args.m is None:
        raise InvalidParameters("--m is required")
    command = {"name": "erasures", "m": args.m, "p": "inf" if math.isinf(args.lp) else args.lp,
               "budget": args.budget, "prune": not args.no_prune}
    try:
        rep = erasures.e_m_p(P, args.m, args.lp, budget=args.budget,
                             accelerate=not args.no_prune, workers=args.workers)
        code = EXIT_OK
    except BudgetExceeded as exc:
        rep = exc.report
        code = EXIT_BUDGET
        print(f"budget exceeded: {exc}", file=sys.stderr)
    results = rep.as_dict()
    if args.m == 3 and not math.isinf(args.lp) and 1 <= params["k"] < params["n"] - 1:
        results["closed_form"] = erasures.e_3_p_closed(params["n"], params["k"], args.lp)
    _emit(args, _document(args, command, info, params, results, rep.exact, started))
    return code


def cmd_bipartite(args) -> int:
    started = time.perf_counter()
    Q, info = _load(args.sig)
    params = _parameters(Q)
    G = seidel.graph_from_signature(Q)
    cap = args.cap if args.cap is not None else G.n
    res = seidel.max_complete_bipartite(G, cap, budget=args.budget)
    v1, v2 = res.partition
    results = {
        "max_size": res.max_size,
        "witness": [v + 1 for v in res.witness],
        "sides": [[v + 1 for v in v1], [v + 1 for v in v2]],
        "exhausted_to": res.exhausted_to,
        "complete": res.complete,
        "search_nodes": res.nodes,
        "bound": erasures.bound_max_bipartite_size(params["n"], params["k"]),
    }
    command = {"name": "bipartite", "cap": cap, "budget": args.budget}
    _emit(args, _document(args, command, info, params, results, res.complete, started))
    return EXIT_OK if res.complete else EXIT_BUDGET


def cmd_reconstruct_demo(args) -> int:
    started = time.perf_counter()
    Q, info = _load(args.sig)
    params = _parameters(Q)
    V = frame_from_signature(Q).matrix
    n, k = V.shape
    if not (0 <= args.erasures <= n):
        raise InvalidParameters(f"--erasures must lie in [0, {n}]")
    rng = np.random.default_rng(args.seed)
    S = erasures.ErasureSet.from_zero_based(np.sort(rng.choice(n, args.erasures, replace=False)))
    x = rng.standard_normal(k)
    y = erasures.erase(erasures.encode(V, x), S)
    e = erasures.erasure_error(V, S)
    x_approx = erasures.approx_reconstruct(V, y)
    results = {
        "erased": list(S.indices),
        "error_norm": e,
        "approx_residual": float(np.linalg.norm(x - x_approx) / np.linalg.norm(x)),
    }
    try:
        x_hat, lnorm = erasures.reconstruct(V, S, y)
        results.update({
            "residual": float(np.linalg.norm(x - x_hat) / np.linalg.norm(x)),
            "left_inverse_norm": lnorm,
            "left_inverse_bound": 1 / math.sqrt(1 - e),
        })
        code = EXIT_OK
    except NotReconstructible as exc:
        results["reconstructible"] = False
        results["reason"] = str(exc)
        code = EXIT_INVALID
    command = {"name": "reconstruct-demo", "erasures": args.erasures, "seed": args.seed}
    _emit(args, _document(args, command, info, params, results, True, started))
    return code


def cmd_verify(args) -> int:
    started = time.perf_counter()

    def show(res):
        print(res.line(), flush=True)

    results = verify.run(args.scope, workers=args.workers, seed=args.seed, on_result=show)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed", flush=True)
    if args.report:
        checks = {str(r.number): {"title": r.title, "passed": r.passed, "details": r.details}
                  for r in results}
        command = {"name": "verify", "scope": args.scope, "seed": args.seed}
        doc = _document(args, command, None, None, checks, not failed, started)
        if not args.no_timing:
            doc["timing"]["per_check"] = {str(r.number): r.seconds for r in results}
        _emit(args, doc)
    return EXIT_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="erasureframes",
        description="Two-uniform Parseval frames, their signature graphs and erasure errors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sig=True):
        if sig:
            p.add_argument("sig", help="signature matrix file (.sig)")
        p.add_argument("--report", help="write the JSON report here instead of stdout")
        p.add_argument("--no-timing", action="store_true",
                       help="omit the timing field so reports are byte-for-byte reproducible")

    p = sub.add_parser("construct", help="write a constructed signature matrix")
    p.add_argument("--kind", required=True, choices=[k.value for k in Kind])
    p.add_argument("--p", type=int, help="prime for the Paley construction")
    p.add_argument("--order", type=int, help="order (a power of 4) of the graph Hadamard")
    p.add_argument("--n", type=int, help="size of a trivial frame")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="frame parameters and two-graph invariants")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("erasures", help="worst-case or averaged erasure error")
    common(p)
    p.add_argument("--m", type=int, help="number of erased coefficients")
    p.add_argument("--lp", type=_parse_p, default=math.inf, help="exponent p, or 'inf' (default)")
    p.add_argument("--budget", type=int, default=erasures.DEFAULT_BUDGET,
                   help="maximum number of subsets to evaluate")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-prune", action="store_true",
                   help="evaluate every compression directly instead of by switching class")
    p.set_defaults(func=cmd_erasures)

    p = sub.add_parser("bipartite", help="largest induced complete bipartite subgraph")
    common(p)
    p.add_argument("--cap", type=int, help="stop once a subgraph of this size is found")
    p.add_argument("--budget", type=int, default=10**7, help="maximum number of search nodes")
    p.set_defaults(func=cmd_bipartite)

    p = sub.add_parser("reconstruct-demo", help="erase random coefficients and recover")
    common(p)
    p.add_argument("--erasures", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_reconstruct_demo)

    p = sub.add_parser("verify", help="run the known-answer checks")
    common(p, sig=False)
    p.add_argument("--scope", choices=["quick", "full"], default="quick")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidParameters, InvalidInput, NotASignature, SizeLimit, Unavailable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FrameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
