"""Command-line front end.  Every command prints one JSON document to stdout.

Exit status: 0 success, 1 numerical failure, 2 invalid input, 3 no convergence.
"""

from __future__ import annotations

import argparse
import json
import sys


from . import engine, fiducial, harness, logic, quantum
from .errors import FrameConflict, NoConvergence, ParaprobError


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParaprobError(f"cannot read {path}: {exc}") from exc


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ParaprobError(f"bad number list {text!r}") from exc


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2, allow_nan=False))


def cmd_infer(args) -> int:
    frame = engine.BeliefFrame.from_json(_load(args.frame))
    table = engine.ConditionalTable.from_json(_load(args.table))
    result = engine.total_probability(frame, table)
    doc = {"frame": frame.to_json(), "result": result.to_json()}
    if table.has_companions:
        doc["closure_residual"] = engine.closure_check(frame, table)
    _emit(doc)
    return 0


def cmd_toy(args) -> int:
    c = engine.shared_contradiction_mass(args.n, args.s)
    doc = {"n": args.n, "s": args.s, "contradiction_mass": c}
    if args.n - args.s > 0:
        doc["weight_coefficient"] = (args.n - 1) / (args.n - args.s)
        doc["offset_coefficient"] = (args.s - 1) / (args.n - args.s)
    if args.b is not None:
        b = _floats(args.b)
        p = _floats(args.p) if args.p is not None else None
        if p is None:
            raise ParaprobError("--b needs --p")
        if abs(sum(p) - args.s) > 1e-12:
            raise ParaprobError(f"sum of --p is {sum(p)!r}, but --s is {args.s!r}")
        doc["value"] = engine.toy_model_total(p, b)
    _emit(doc)
    return 0


def _sic(path: str) -> quantum.SicSet:
    if path.startswith("builtin:"):
        return quantum.builtin_sic(int(path.split(":", 1)[1]))
    return quantum.sic_from_json(_load(path))


def cmd_predict(args) -> int:
    sic = _sic(args.sic)
    rho = quantum.DensityOp(quantum.matrix_from_json(_load(args.state)))
    sigma = quantum.matrix_from_json(_load(args.effect))
    direct = quantum.born(rho, sigma)
    q = quantum.sic_probs(rho, sic)
    t = quantum.effect_probs(sigma, sic)
    qt = quantum.quantum_total(q, t)
    doc = {"direct": direct, "quantum_total": qt, "q": q.q.tolist(), "t": t.tolist()}
    worst = abs(direct - qt)
    try:
        frame, table = harness.identify(q, t)
    except FrameConflict as exc:
        doc["pbpt"] = None
        doc["pbpt_skipped"] = str(exc)
    else:
        doc["pbpt"] = engine.total_probability(frame, table).value
        worst = max(worst, abs(direct - doc["pbpt"]))
    doc["pass"] = worst <= args.tol
    _emit(doc)
    return 0 if doc["pass"] else 1


def cmd_reconstruct(args) -> int:
    sic = _sic(args.sic)
    qdoc = _load(args.q)
    q = quantum.SicProbVec(int(qdoc["d"]), qdoc["q"])
    m = quantum.reconstruct(q, sic)
    lam = quantum.physicality(m)
    _emit({"matrix": quantum.matrix_to_json(m), "min_eigenvalue": lam,
           "physical": lam >= -quantum.PSD_TOL})
    return 0


def cmd_sic_verify(args) -> int:
    sic = _sic(args.sic)
    _emit({"d": sic.d, "gram_residual": sic.residual, "tolerance": sic.tolerance,
           "frame_potential": fiducial.frame_potential(sic.fiducial, sic.d), "pass": True})
    return 0


def cmd_sic_builtin(args) -> int:
    _emit(quantum.sic_to_json(quantum.builtin_sic(args.d)))
    return 0


def cmd_sic_find(args) -> int:
    config = fiducial.SearchConfig(d=args.d, seed=args.seed, restarts=args.restarts,
                                   max_iters=args.max_iters, target_residual=args.target)
    try:
        result = fiducial.optimize(config)
    except NoConvergence as exc:
        _emit(exc.result.to_json())
        return 3
    _emit(result.to_json())
    return 0


def cmd_crosscheck(args) -> int:
    sic = _sic(args.sic) if args.sic else None
    report = harness.crosscheck(args.d, args.trials, args.seed, args.tol, sic=sic,
                                states=args.states)
    _emit(report.to_json())
    return 0 if report.passed else 1


def cmd_gap(args) -> int:
    sic = _sic(args.sic) if args.sic else None
    witness = harness.physicality_gap(args.d, args.seed, args.attempts, sic=sic)
    _emit(witness.to_json())
    return 0


def cmd_simplify(args) -> int:
    expr = logic.parse(args.expr, constants=True)
    nf, trace = logic.simplify_trace(expr)
    doc = {"input": logic.to_sexpr(expr), "normal_form": logic.to_sexpr(nf), "rules": trace}
    a = logic.decomposition_of(expr)
    if a is not None:
        doc["decomposition_of"] = logic.to_sexpr(a)
    _emit(doc)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="paraprob", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("pbpt", help="paraconsistent probability rules").add_subparsers(
        dest="pbpt_command", required=True)
    p = pb.add_parser("infer", help="total probability for a frame and conditional table")
    p.add_argument("frame")
    p.add_argument("table")
    p.set_defaults(func=cmd_infer)
    p = pb.add_parser("toy", help="shared-contradiction model coefficients")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--p", help="comma-separated hypothesis masses")
    p.add_argument("--b", help="comma-separated conditionals")
    p.set_defaults(func=cmd_toy)

    qu = sub.add_parser("quantum", help="SIC quantum predictions").add_subparsers(
        dest="quantum_command", required=True)
    p = qu.add_parser("predict", help="Tr(Sigma rho) three ways")
    p.add_argument("state")
    p.add_argument("sic", help="SIC file, or builtin:2 / builtin:3")
    p.add_argument("effect")
    p.add_argument("--tol", type=float, default=harness.DEFAULT_TOL)
    p.set_defaults(func=cmd_predict)
    p = qu.add_parser("reconstruct", help="operator from SIC probabilities")
    p.add_argument("q")
    p.add_argument("sic")
    p.set_defaults(func=cmd_reconstruct)

    si = sub.add_parser("sic", help="SIC sets").add_subparsers(dest="sic_command", required=True)
    p = si.add_parser("verify")
    p.add_argument("sic")
    p.set_defaults(func=cmd_sic_verify)
    p = si.add_parser("builtin")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_sic_builtin)
    p = si.add_parser("find")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-iters", type=int, default=400)
    p.add_argument("--target", type=float, default=1e-9)
    p.set_defaults(func=cmd_sic_find)

    p = sub.add_parser("crosscheck", help="PBPT vs quantum vs direct trace")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=harness.DEFAULT_TOL)
    p.add_argument("--states", choices=harness.STATE_FAMILIES, default="hs")
    p.add_argument("--sic", help="SIC file (default: built-in for d=2,3)")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("gap", help="SIC vector whose reconstruction is not a state")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=10_000)
    p.add_argument("--sic")
    p.set_defaults(func=cmd_gap)

    lg = sub.add_parser("logic", help="C1 rewrite layer").add_subparsers(
        dest="logic_command", required=True)
    p = lg.add_parser("simplify", help="normalize an S-expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_simplify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParaprobError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    except (KeyError, TypeError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
