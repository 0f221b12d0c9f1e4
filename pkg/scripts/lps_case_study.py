"""Build LPS(p, q), measure spectrum and diameter, and report the case-study parameters.

Optionally runs a few honest proofs on the LPS graph code to time prover and verifier.

    python3 scripts/lps_case_study.py --p 5 --q 13 --k 4 --proofs 5
"""

from __future__ import annotations

import argparse
import random
import time

from flowering.analysis import adjacency_spectrum, case_study
from flowering.code import GraphCode, RSCode
from flowering.field import PrimeField
from flowering.instances import lps_bundle
from flowering.protocol import ProtocolParams, prove, verify_bytes
from flowering.rim import graph_diameter


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--q", type=int, default=13)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--modulus", type=int, default=2**31 - 1)
    ap.add_argument("--reps", type=int, default=4)
    ap.add_argument("--proofs", type=int, default=0)
    args = ap.parse_args()

    start = time.perf_counter()
    bundle = lps_bundle(args.p, args.q)
    seq = bundle.sequence
    print(f"graph: {bundle.rim!r}, rounds {seq.R}, orders {seq.orders}, "
          f"sizes {[g.vertex_count for g in seq.graphs]} ({time.perf_counter() - start:.1f}s)")
    spectrum = adjacency_spectrum(bundle.rim)
    report = case_study(args.p, args.q, args.k, spectrum=spectrum, measured_diameter=graph_diameter(bundle.rim))
    print(report.text())

    if args.proofs:
        fld = PrimeField(args.modulus)
        start = time.perf_counter()
        code = GraphCode(bundle.rim, RSCode(fld, bundle.rim.arity, args.k))
        print(f"\ncode dimension {code.dimension} ({time.perf_counter() - start:.1f}s elimination)")
        params = ProtocolParams.from_sequence(seq, fld, args.k, args.reps)
        src = random.Random(0)
        for i in range(args.proofs):
            word = code.sample_codeword(src)
            t0 = time.perf_counter()
            res = prove(word, params)
            data = res.proof.to_bytes()
            t1 = time.perf_counter()
            ok = verify_bytes(data, params).accepted
            t2 = time.perf_counter()
            print(f"proof {i}: {len(data)} bytes, queries {res.counters.queries}, "
                  f"prove {t1 - t0:.2f}s, verify {t2 - t1:.3f}s, accepted={ok}")


if __name__ == "__main__":
    main()
