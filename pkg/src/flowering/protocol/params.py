"""Protocol parameters and complexity counters."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, fields
from functools import cached_property

import numpy as np

from ..cayley import BlossomingSequence
from ..code import RSCode
from ..field import PrimeField
from ..rim import RIM, CutCollection


class ParamsError(ValueError):
    pass


@dataclass
class ProtocolParams:
    graphs: list[RIM]
    rounds: list[CutCollection]
    field: PrimeField
    k: int
    L: int
    t: int
    mode: str = "fiat-shamir"

    def __post_init__(self):
        n = self.n
        if len(self.graphs) != len(self.rounds) + 1:
            raise ParamsError("need one more graph than rounds")
        if self.graphs[-1].vertex_count != 1:
            raise ParamsError("the last graph must be a flower")
        if not 1 <= self.k < n:
            raise ParamsError(f"need 1 <= k < n, got k={self.k}, n={n}")
        if not 1 <= self.t <= n:
            raise ParamsError(f"need 1 <= t <= n, got t={self.t}")
        if self.L < 1:
            raise ParamsError("need at least one repetition")
        if self.mode not in ("fiat-shamir", "interactive"):
            raise ParamsError(f"unknown mode {self.mode!r}")
        if any(c.order > 255 for c in self.rounds):
            raise ParamsError("round orders must fit in one byte")

    @classmethod
    def from_sequence(
        cls,
        seq: BlossomingSequence,
        fld: PrimeField,
        k: int,
        L: int,
        t: int | None = None,
        mu: float | None = None,
        mode: str = "fiat-shamir",
    ) -> "ProtocolParams":
        n = seq.arity
        if t is None:
            t = n if mu is None else max(1, math.floor(mu * n))
        return cls(list(seq.graphs), list(seq.rounds), fld, k, L, t, mode)

    @property
    def n(self) -> int:
        return self.graphs[0].arity

    @property
    def R(self) -> int:
        return len(self.rounds)

    @property
    def orders(self) -> list[int]:
        return [c.order for c in self.rounds]

    @property
    def mu(self) -> float:
        return self.t / self.n

    @cached_property
    def code(self) -> RSCode:
        return RSCode(self.field, self.n, self.k)

    @cached_property
    def inverse_maps(self) -> list[list[np.ndarray]]:
        """inverse_maps[r][i][v] = child id u with phi_i(u) = v, or -1 (0-based round r)."""
        out = []
        for c in self.rounds:
            per = []
            for phi in c.isomorphisms:
                inv = np.full(c.parent.vertex_count, -1, dtype=np.int64)
                inv[phi] = np.arange(len(phi))
                per.append(inv)
            out.append(per)
        return out

    @cached_property
    def candidates(self) -> list[list[list[int]]]:
        """candidates[r][v] = sorted cut positions i with v in V_i."""
        out = []
        for r, c in enumerate(self.rounds):
            inv = self.inverse_maps[r]
            out.append([[i for i in range(c.order) if inv[i][v] >= 0] for v in range(c.parent.vertex_count)])
        return out

    @cached_property
    def digest(self) -> bytes:
        h = hashlib.sha256(b"flowering-params")
        h.update(self.field.modulus.to_bytes(8, "little"))
        for x in (self.n, self.k, self.R, self.L, self.t):
            h.update(x.to_bytes(4, "little"))
        h.update(bytes(self.orders))
        h.update(self.graphs[0].digest())
        for c in self.rounds:
            for s, phi in zip(c.subsets, c.isomorphisms):
                h.update(len(s).to_bytes(4, "little"))
                h.update(np.asarray(s, dtype="<u4").tobytes())
                h.update(np.asarray(phi, dtype="<u4").tobytes())
        return h.digest()

    # closed forms -----------------------------------------------------------
    def query_count(self) -> int:
        """L t (sum_r m_r + 1) + n."""
        return self.L * self.t * (sum(self.orders) + 1) + self.n

    def query_count_constant_m(self) -> int:
        """(mR + m - 1) t L + n, valid when every m_r equals m."""
        ms = set(self.orders)
        if len(ms) != 1:
            raise ParamsError("round orders differ")
        m = ms.pop()
        return (m * self.R + m - 1) * self.t * self.L + self.n

    def proof_length(self) -> int:
        return sum(g.edge_count for g in self.graphs[1:])

    def prover_ops(self) -> int:
        return sum((2 * c.order - 1) * c.child.edge_count for c in self.rounds)

    def verifier_ops(self) -> int:
        n, k = self.n, self.k
        return self.L * self.t * sum(2 * m - 2 for m in self.orders) + (n - k) * (2 * n - 1)

    def verifier_ops_bound(self) -> float:
        m = max(self.orders)
        return self.R * self.L * self.t * (m + 2) + self.n * math.log2(self.n)


@dataclass
class ComplexityCounters:
    prover_ops: int = 0
    verifier_ops: int = 0
    queries: int = 0
    rounds: int = 0
    proof_length: int = 0
    rand_field: int = 0
    rand_vertices: int = 0
    rand_subsets: int = 0
    rand_cuts: int = 0

    def add(self, name: str, amount: int = 1) -> None:
        if amount < 0:
            raise ValueError("counters only grow")
        setattr(self, name, getattr(self, name) + amount)

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}
