"""Proof objects and their little-endian wire format.

magic "FLWR" | version u8 | modulus (u8 len | bytes) | n, k, R, L, t u32 |
m_r u8 per round | input root | R roots | final view (n elements) |
openings, each: leaf u32 | value | path len u8 | digests.

Openings form one flat list in the order the verifier consumes them, so the
stream carries no per-repetition framing.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

from ..field import FieldError, PrimeField
from .merkle import DIGEST_LEN

MAGIC = b"FLWR"
VERSION = 1


class MalformedProof(ValueError):
    pass


@dataclass
class Opening:
    leaf: int
    value: int
    path: list[bytes]


@dataclass
class Proof:
    modulus: int
    n: int
    k: int
    R: int
    L: int
    t: int
    orders: list[int]
    input_root: bytes
    roots: list[bytes]
    final_view: list[int]
    openings: list[Opening] = field(default_factory=list)

    def to_bytes(self) -> bytes:
        return encode_proof(self)

    @classmethod
    def from_bytes(cls, data: bytes) -> "Proof":
        return decode_proof(data)


def encode_proof(proof: Proof) -> bytes:
    fld = PrimeField(proof.modulus)
    mod_bytes = proof.modulus.to_bytes(max(1, (proof.modulus.bit_length() + 7) // 8), "little")
    out = [MAGIC, bytes([VERSION, len(mod_bytes)]), mod_bytes]
    out.append(struct.pack("<5I", proof.n, proof.k, proof.R, proof.L, proof.t))
    out.append(bytes(proof.orders))
    out.append(proof.input_root)
    out.extend(proof.roots)
    out.extend(fld.to_bytes(x) for x in proof.final_view)
    for op in proof.openings:
        out.append(struct.pack("<I", op.leaf))
        out.append(fld.to_bytes(op.value))
        out.append(bytes([len(op.path)]))
        out.extend(op.path)
    return b"".join(out)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise MalformedProof("truncated proof")
        chunk = self.data[self.pos : self.pos + size]
        self.pos += size
        return chunk

    def u8(self) -> int:
        return self.take(1)[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    @property
    def done(self) -> bool:
        return self.pos == len(self.data)


def decode_proof(data: bytes) -> Proof:
    r = _Reader(bytes(data))
    if r.take(4) != MAGIC:
        raise MalformedProof("bad magic")
    if r.u8() != VERSION:
        raise MalformedProof("unsupported version")
    mod_len = r.u8()
    if mod_len == 0:
        raise MalformedProof("empty modulus")
    mod_bytes = r.take(mod_len)
    modulus = int.from_bytes(mod_bytes, "little")
    if mod_bytes[-1] == 0:
        raise MalformedProof("non-canonical modulus encoding")
    try:
        fld = PrimeField(modulus)
    except FieldError as exc:
        raise MalformedProof(f"bad modulus: {exc}") from None
    n, k, R, L, t = (r.u32() for _ in range(5))
    orders = list(r.take(R))
    input_root = r.take(DIGEST_LEN)
    roots = [r.take(DIGEST_LEN) for _ in range(R)]

    def element() -> int:
        try:
            return fld.from_bytes(r.take(fld.byte_len))
        except FieldError as exc:
            raise MalformedProof(str(exc)) from None

    final_view = [element() for _ in range(n)]
    openings = []
    while not r.done:
        leaf = r.u32()
        value = element()
        depth = r.u8()
        openings.append(Opening(leaf, value, [r.take(DIGEST_LEN) for _ in range(depth)]))
    return Proof(modulus, n, k, R, L, t, orders, input_root, roots, final_view, openings)
