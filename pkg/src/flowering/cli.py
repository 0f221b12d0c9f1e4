"""Command-line entry point.

Exit codes: 0 success / accept, 1 verification reject, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .analysis import adjacency_spectrum, case_study, comparison_report, soundness_bound
from .code import GraphCode, RSCode, corrupt_edges, invalid_fraction
from .field import PrimeField
from .instances import FAMILIES, GraphBundle, build_bundle, load_bundle, save_bundle
from .protocol import (
    STRATEGIES,
    ProtocolParams,
    prove,
    simulate_soundness,
    verify_bytes,
)
from .protocol.wire import MalformedProof, Proof
from .rim import dumps_rim, dumps_word, graph_diameter, loads_rim, loads_word

DEFAULT_MODULUS = 101


class UsageError(Exception):
    pass


def _kv(pairs: dict) -> str:
    return "\n".join(f"{k}={v}" for k, v in pairs.items())


def _family_params(args) -> dict[str, str]:
    params: dict[str, str] = {}
    if args.family == "z2r":
        params["r"] = str(args.r)
    if args.family == "lps":
        if args.p is None or args.q is None:
            raise UsageError("lps needs --p and --q")
        params.update(p=str(args.p), q=str(args.q))
    if args.generators:
        params["generators"] = " ".join(args.generators)
    return params


def _bundle_from_args(args) -> GraphBundle:
    if getattr(args, "graph", None):
        return load_bundle(args.graph)
    return build_bundle(args.family, _family_params(args))


def cmd_graph(args) -> int:
    if args.family == "file":
        if not args.input:
            raise UsageError("file family needs --input")
        src = Path(args.input)
        rim = loads_rim(src.read_text())
        text = dumps_rim(rim)
        Path(args.out).write_text(text)
        Path(args.out + ".meta").write_text(
            f"family: file\nvertices: {rim.vertex_count}\narity: {rim.arity}\n"
            f"edges: {rim.edge_count}\ndigest: {rim.digest().hex()}\n"
        )
        print(_kv({"vertices": rim.vertex_count, "arity": rim.arity, "edges": rim.edge_count}))
        return 0
    bundle = build_bundle(args.family, _family_params(args), trim=not args.no_trim, full_orbit=args.full_orbit)
    save_bundle(bundle, args.out)
    meta = bundle.meta()
    print(_kv({k: meta[k] for k in ("vertices", "arity", "edges", "diameter", "rounds", "orders", "sizes")}))
    return 0


def cmd_codeword(args) -> int:
    bundle = load_bundle(args.graph)
    fld = PrimeField(args.modulus)
    code = GraphCode(bundle.rim, RSCode(fld, bundle.rim.arity, args.k))
    source = random.Random(args.seed)
    word = code.sample_codeword(source)
    if args.corrupt:
        word = corrupt_edges(word, args.corrupt, source)
    Path(args.out).write_bytes(dumps_word(word))
    print(_kv({"dimension": code.dimension, "edges": bundle.rim.edge_count,
               "invalid_fraction": invalid_fraction(word, code.base)}))
    return 0


def _params(bundle: GraphBundle, fld: PrimeField, k: int, reps: int, t: int | None, mode="fiat-shamir"):
    return ProtocolParams.from_sequence(bundle.sequence, fld, k, reps, t=t, mode=mode)


def cmd_prove(args) -> int:
    bundle = load_bundle(args.graph)
    word_bytes = Path(args.word).read_bytes()
    word = loads_word(word_bytes, bundle.rim)
    params = _params(bundle, word.field, args.k, args.reps, args.edges_per_check)
    result = prove(word, params)
    data = result.proof.to_bytes()
    Path(args.out).write_bytes(data)
    out = {"proof_bytes": len(data), "input_root": result.proof.input_root.hex()}
    out.update(result.counters.as_dict())
    print(_kv(out))
    return 0


def cmd_verify(args) -> int:
    bundle = load_bundle(args.graph)
    data = Path(args.proof).read_bytes()
    try:
        header = Proof.from_bytes(data)
    except MalformedProof as exc:
        print(f"result=reject\nreason=MalformedProof: {exc}")
        return 1
    k = args.k if args.k is not None else header.k
    reps = args.reps if args.reps is not None else header.L
    t = args.edges_per_check if args.edges_per_check is not None else header.t
    try:
        params = _params(bundle, PrimeField(header.modulus), k, reps, t)
    except ValueError as exc:
        print(f"result=reject\nreason=parameters: {exc}")
        return 1
    root = bytes.fromhex(args.input_root) if args.input_root else None
    res = verify_bytes(data, params, root)
    out = {"result": "accept" if res.accepted else "reject", "reason": res.reason}
    out.update(res.counters.as_dict())
    print(_kv(out))
    return 0 if res.accepted else 1


def cmd_simulate(args) -> int:
    bundle = _bundle_from_args(args)
    fld = PrimeField(args.modulus)
    source = random.Random(args.seed)
    code = GraphCode(bundle.rim, RSCode(fld, bundle.rim.arity, args.k))
    codeword = code.sample_codeword(source)
    f0 = corrupt_edges(codeword, args.corrupt, source)
    params = _params(bundle, fld, args.k, args.reps, args.edges_per_check, mode="interactive")
    est = simulate_soundness(params, f0, args.strategy, args.trials, source, codeword=codeword)
    out = {
        "strategy": est.strategy,
        "trials": est.trials,
        "accepted": est.accepted,
        "rate": f"{est.rate:.6g}",
        "wilson99_low": f"{est.low:.6g}",
        "wilson99_high": f"{est.high:.6g}",
        "delta": est.delta,
    }
    if est.delta > 0:
        sb = soundness_bound(params.orders, fld.modulus, params.mu, params.L, est.delta)
        out.update({"bound_eps": f"{sb.eps:.6g}", "bound_commit": f"{sb.commit:.6g}",
                    "bound_query": f"{sb.query:.6g}", "bound_total": f"{sb.total:.6g}"})
    print(_kv(out))
    return 0


def cmd_params(args) -> int:
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None or args.k is None:
            raise UsageError("case study needs --p, --q and --k")
        spectrum = diameter = None
        if args.measure:
            bundle = build_bundle("lps", {"p": str(args.p), "q": str(args.q)})
            spectrum = adjacency_spectrum(bundle.rim)
            diameter = graph_diameter(bundle.rim)
        report = case_study(args.p, args.q, args.k, spectrum=spectrum, measured_diameter=diameter)
    else:
        if args.N is None or args.K is None:
            raise UsageError("comparison needs --N and --K (or --p --q --k for the case study)")
        report = comparison_report(args.N, args.K, args.security, args.kappa, n=args.n, delta=args.delta, L=args.L)
    if args.format in ("text", "both"):
        print(report.text())
    if args.format == "both":
        print()
    if args.format in ("kv", "both"):
        print(report.key_values())
    return 0


def _add_family(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("family", choices=FAMILIES, nargs=None if required else "?", default="a4")
    p.add_argument("--r", type=int, default=3, help="rank for z2r")
    p.add_argument("--p", type=int, help="LPS p")
    p.add_argument("--q", type=int, help="LPS q")
    p.add_argument("--generators", nargs="+", help="base generator list, in schedule order")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flowering", description="Proximity proofs for codes on Cayley graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="build a graph and write .rim + .rim.meta")
    _add_family(g)
    g.add_argument("--input", help="source .rim file for the file family")
    g.add_argument("--no-trim", action="store_true", help="keep blossoming steps that do not shrink the graph")
    g.add_argument("--full-orbit", action="store_true", help="use exponents 0..ord-1 instead of {0, 1, -1}")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_graph)

    c = sub.add_parser("codeword", help="sample a codeword of C(G, k), optionally corrupted")
    c.add_argument("--graph", required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--modulus", type=int, default=DEFAULT_MODULUS)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--corrupt", type=int, default=0, help="number of edges to corrupt")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_codeword)

    p = sub.add_parser("prove", help="write a non-interactive proof for a word")
    p.add_argument("--graph", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--reps", type=int, default=8)
    p.add_argument("--edges-per-check", type=int, default=None, help="t; defaults to n")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_prove)

    v = sub.add_parser("verify", help="verify a proof (exit 0 accept, 1 reject)")
    v.add_argument("--proof", required=True)
    v.add_argument("--graph", required=True)
    v.add_argument("--k", type=int, default=None, help="expected k; defaults to the proof header")
    v.add_argument("--reps", type=int, default=None)
    v.add_argument("--edges-per-check", type=int, default=None)
    v.add_argument("--input-root", default=None, help="hex root the input word must match")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="acceptance rate of a cheating prover")
    s.add_argument("--strategy", choices=STRATEGIES, default="honest-fold")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--graph", default=None, help=".rim file; overrides the family")
    _add_family(s, required=False)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--modulus", type=int, default=DEFAULT_MODULUS)
    s.add_argument("--reps", type=int, default=8)
    s.add_argument("--edges-per-check", type=int, default=None)
    s.add_argument("--corrupt", type=int, default=6, help="number of edges to corrupt")
    s.set_defaults(func=cmd_simulate)

    q = sub.add_parser("params", help="parameter and comparison reports")
    q.add_argument("--N", type=int)
    q.add_argument("--K", type=int)
    q.add_argument("--security", type=int, default=128)
    q.add_argument("--kappa", type=float, default=128.0)
    q.add_argument("--n", type=int, default=6)
    q.add_argument("--delta", type=float, default=0.25)
    q.add_argument("--L", type=int, default=None)
    q.add_argument("--p", type=int)
    q.add_argument("--q", type=int)
    q.add_argument("--k", type=int)
    q.add_argument("--measure", action="store_true", help="case study: also compute spectrum and diameter")
    q.add_argument("--format", choices=("text", "kv", "both"), default="both")
    q.set_defaults(func=cmd_params)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
