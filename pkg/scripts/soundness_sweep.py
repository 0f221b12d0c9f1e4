"""Acceptance rate of cheating provers on A4 against the soundness bound.

Sweeps repetitions L and corruption levels, printing one CSV row per point.

    python3 scripts/soundness_sweep.py --modulus 2147483647 --trials 5000
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
from fractions import Fraction

from flowering.analysis import soundness_bound
from flowering.code import GraphCode, RSCode, corrupt_edges, invalid_fraction
from flowering.field import PrimeField
from flowering.instances import build_bundle
from flowering.protocol import STRATEGIES, ProtocolParams, simulate_soundness


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="a4")
    ap.add_argument("--modulus", type=int, default=101)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--reps", type=int, nargs="+", default=[1, 2, 4, 8])
    ap.add_argument("--corrupt", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--t", type=int, default=None, help="edges checked per round (default n)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    seq = build_bundle(args.family, {}).sequence
    fld = PrimeField(args.modulus)
    code = GraphCode(seq.graphs[0], RSCode(fld, seq.arity, args.k))
    src = random.Random(args.seed)
    out = csv.writer(sys.stdout)
    out.writerow(["strategy", "corrupt", "delta", "L", "t", "accepted", "trials", "rate", "wilson_high", "bound"])
    for count in args.corrupt:
        c = code.sample_codeword(src)
        f0 = corrupt_edges(c, count, src)
        delta = invalid_fraction(f0, code.base)
        if delta == 0:
            continue
        for L in args.reps:
            params = ProtocolParams.from_sequence(seq, fld, args.k, L, t=args.t, mode="interactive")
            bound = soundness_bound(params.orders, args.modulus, params.mu, L, delta).total
            for strategy in STRATEGIES:
                est = simulate_soundness(params, f0, strategy, args.trials, src, codeword=c)
                out.writerow([strategy, count, Fraction(delta), L, params.t, est.accepted, est.trials,
                              f"{est.rate:.5f}", f"{est.high:.5f}", f"{bound:.5f}"])


if __name__ == "__main__":
    main()
