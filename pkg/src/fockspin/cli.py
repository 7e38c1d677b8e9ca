"""Command line interface: ``fockspin <command> ...``.

JSON goes to standard output, diagnostics to standard error.
Exit codes: 0 success, 2 invalid input file, 3 unsupported case
(no classifier or representative for the given d and sector, mixed parity,
incompatible mode counts), 1 failed self-test.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__, classify, embed, invariants, schemas, selftest
from .fock import DimensionMismatch, norm
from .spin import SpinElement

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_SCHEMA = 2
EXIT_UNSUPPORTED = 3


class Unsupported(Exception):
    pass


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise schemas.SchemaError(f"cannot read {path}: {exc.strerror}") from None
    return schemas.loads(text)


def _read_state(path: str):
    return schemas.state_from_json(_read(path))


def _emit(obj) -> None:
    sys.stdout.write(schemas.dumps(obj) + "\n")


def _envelope(kind: str, body: dict, tolerances: dict) -> dict:
    return {"tool": "fockspin", "version": __version__, "kind": kind, "tolerances": tolerances, **body}


def cmd_classify(args) -> int:
    phi = _read_state(args.state)
    tol = classify.default_tol() if args.tol is None else args.tol
    fn = {
        "auto": classify.classify,
        "d6_even": classify.classify_d6_even,
        "d6_odd": classify.classify_d6_odd,
        "small": classify.classify_small,
    }[args.classifier]
    rep = fn(phi, tol).to_dict()
    tols = rep.pop("tolerances")
    _emit(_envelope("classification", rep, tols))
    return EXIT_OK


def cmd_invariants(args) -> int:
    phi = _read_state(args.state)
    try:
        rep = invariants.invariant_report(phi, args.k_max)
    except ValueError as exc:
        raise Unsupported(str(exc)) from None
    body = {
        "d": rep.d,
        "sector": rep.sector,
        "pairing_self": rep.pairing_self,
        "qk": {str(k): q for k, q in enumerate(rep.qk, start=1)},
        "moment_rank": rep.moment_rank,
        "moment_zero": rep.moment_zero,
    }
    if phi.d % 2 == 0:
        M = invariants.moment_map(phi)
        body["moment_map"] = {"A": M.A, "B": M.B, "beta": M.beta}
    else:
        body["vphi"] = rep.vphi
    tols = {"rank_rtol": invariants.RANK_RTOL, "zero_rtol": invariants.ZERO_RTOL}
    _emit(_envelope("invariants", body, tols))
    return EXIT_OK


def cmd_pairing(args) -> int:
    phi, psi = _read_state(args.state), _read_state(args.other)
    if phi.d != psi.d:
        raise DimensionMismatch(f"d={phi.d} vs d={psi.d}")
    _emit(_envelope("pairing", {"d": phi.d, "pairing": invariants.mukai_pairing(phi, psi)}, {}))
    return EXIT_OK


def cmd_transform(args) -> int:
    phi = _read_state(args.state)
    gens = [schemas.generator_from_json(_read(p)) for p in args.generator]
    try:
        order = list(range(len(gens))) if args.order is None else [int(t) for t in args.order.split(",") if t]
    except ValueError:
        raise schemas.SchemaError(f"--order must be comma-separated integers, got {args.order!r}") from None
    if any(k < 0 or k >= len(gens) for k in order):
        raise schemas.SchemaError(f"--order entries must lie in 0..{len(gens) - 1}")
    for g in gens:
        if g.d != phi.d:
            raise DimensionMismatch(f"generator d={g.d} vs state d={phi.d}")
    out = SpinElement([gens[k] for k in order]).apply(phi)
    meta = schemas.state_metadata(out)
    meta["input_norm"] = norm(phi)
    _emit(schemas.state_to_json(out, meta))
    return EXIT_OK


def cmd_canonical(args) -> int:
    cf = classify.canonical_state(args.d, args.sector, args.label)
    meta = {"label": cf.label, "parameters": list(cf.parameters), **schemas.state_metadata(cf.state)}
    _emit(schemas.state_to_json(cf.state, meta))
    return EXIT_OK


def cmd_embed(args) -> int:
    Phi = schemas.qubits_from_json(_read(args.qubits))
    if args.target == "d4":
        if Phi.ndim != 2:
            raise Unsupported("target d4 takes a two-qubit state")
        phi = embed.embed_two_qubit_d4(Phi)
    else:
        if Phi.ndim != 3:
            raise Unsupported(f"target {args.target} takes a three-qubit state")
        phi = (embed.embed_three_qubit_even if args.target == "even" else embed.embed_three_qubit_odd)(Phi)
    _emit(schemas.state_to_json(phi, schemas.state_metadata(phi)))
    return EXIT_OK


def cmd_sample(args) -> int:
    cf = classify.canonical_state(args.d, args.sector, args.label)
    states = classify.orbit_sample(cf, args.seed, args.count, scale=args.scale)
    _emit([schemas.state_to_json(s, {"index": n, "label": cf.label, **schemas.state_metadata(s)})
           for n, s in enumerate(states)])
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run_selftest(args.seed)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}", file=sys.stderr)
    passed = all(ok for _, ok, _ in results)
    _emit(_envelope("selftest", {"passed": passed, "checks": [
        {"name": n, "passed": ok, "detail": d} for n, ok, d in results]}, {}))
    return EXIT_OK if passed else EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fockspin", description="Spin-group tools for fermionic Fock states.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="orbit classification of a state")
    s.add_argument("--state", required=True)
    s.add_argument("--tol", type=float, default=None,
                   help=f"relative zero tolerance (default from ${classify.TOL_ENV} or 1e-8)")
    s.add_argument("--classifier", choices=["auto", "d6_even", "d6_odd", "small"], default="auto")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("invariants", help="pairing, moment map and q_k")
    s.add_argument("--state", required=True)
    s.add_argument("--k-max", type=int, default=4)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("pairing", help="Spin-invariant pairing of two states")
    s.add_argument("--state", required=True)
    s.add_argument("--other", required=True)
    s.set_defaults(func=cmd_pairing)

    s = sub.add_parser("transform", help="apply exp(T_1) ... exp(T_n); the rightmost acts first")
    s.add_argument("--state", required=True)
    s.add_argument("--generator", nargs="+", required=True)
    s.add_argument("--order", default=None, help="comma-separated generator indices, leftmost applied last")
    s.set_defaults(func=cmd_transform)

    for name, helptext in (("canonical", "canonical orbit representative"), ("sample", "random orbit points")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--d", type=int, required=True)
        s.add_argument("--sector", choices=["even", "odd"], required=True)
        s.add_argument("--label", required=True)
        if name == "sample":
            s.add_argument("--count", type=int, default=1)
            s.add_argument("--seed", type=int, default=0)
            s.add_argument("--scale", type=float, default=0.3)
            s.set_defaults(func=cmd_sample)
        else:
            s.set_defaults(func=cmd_canonical)

    s = sub.add_parser("embed", help="qubit state into the Fock space")
    s.add_argument("--qubits", required=True)
    s.add_argument("--target", choices=["odd", "even", "d4"], required=True)
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("selftest", help="run the property checks")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except schemas.SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (classify.UnsupportedCase, Unsupported, DimensionMismatch) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
