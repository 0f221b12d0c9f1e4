"""Write the golden proof fixtures used by the wire-format tests.

Run from the repository root:  python3 scripts/make_fixtures.py
Re-running must leave every file byte-identical; the tests check exactly that.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
from pathlib import Path

from flowering.code import GraphCode, RSCode
from flowering.field import PrimeField
from flowering.instances import build_bundle, save_bundle
from flowering.protocol import ProtocolParams, prove, verify_bytes
from flowering.rim import dumps_word

# name -> (family, family params, modulus, k, L, t, seed)
FIXTURES = {
    "a4": ("a4", {}, 101, 2, 4, None, 2024),
    "z2r3": ("z2r", {"r": "3"}, 2**31 - 1, 2, 3, 2, 7),
}


def build_fixture(name: str, out: Path) -> dict:
    family, fparams, modulus, k, L, t, seed = FIXTURES[name]
    bundle = build_bundle(family, fparams)
    fld = PrimeField(modulus)
    code = GraphCode(bundle.rim, RSCode(fld, bundle.rim.arity, k))
    word = code.sample_codeword(random.Random(seed))
    params = ProtocolParams.from_sequence(bundle.sequence, fld, k, L, t=t)
    proof = prove(word, params).proof.to_bytes()
    if not verify_bytes(proof, params).accepted:
        raise SystemExit(f"fixture {name} does not verify")
    save_bundle(bundle, out / f"{name}.rim")
    (out / f"{name}_word.bin").write_bytes(dumps_word(word))
    (out / f"{name}_proof.bin").write_bytes(proof)
    return {
        "family": family,
        "params": fparams,
        "modulus": modulus,
        "k": k,
        "L": L,
        "t": params.t,
        "proof_sha256": hashlib.sha256(proof).hexdigest(),
        "proof_bytes": len(proof),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests" / "fixtures"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {name: build_fixture(name, out) for name in FIXTURES}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    for name, entry in manifest.items():
        print(f"{name}: {entry['proof_bytes']} bytes sha256={entry['proof_sha256']}")


if __name__ == "__main__":
    main()
