"""Prover, verifier and the shared query phase."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from ..field import FieldError
from ..fold import fold_values
from ..rim import EdgeWord, ShapeMismatch
from .merkle import MerkleCommitment, merkle_commit, verify_path
from .params import ComplexityCounters, ProtocolParams
from .transcript import RandomCoins, Transcript, partial_shuffle
from .wire import MalformedProof, Opening, Proof


class Reject(Exception):
    """Verifier rejection; the message says which check failed."""


class OpeningInvalid(Reject):
    pass


class FoldMismatch(Reject):
    pass


class FinalCheckFailed(Reject):
    pass


class Coins(Protocol):
    def observe(self, root: bytes) -> None: ...
    def field_element(self, modulus: int) -> int: ...
    def index(self, bound: int) -> int: ...


class Oracles(Protocol):
    def open(self, word: int, edge: int) -> int: ...


def word_leaves(f: EdgeWord) -> list[bytes]:
    to_bytes = f.field.to_bytes
    return [to_bytes(int(x)) for x in f.values]


def commit_word(f: EdgeWord) -> MerkleCommitment:
    return merkle_commit(word_leaves(f))


# -- oracles -----------------------------------------------------------------------
class DirectOracles:
    """Reads committed words straight from memory (interactive simulation)."""

    def __init__(self, words: list[EdgeWord]):
        self.words = words

    def open(self, word: int, edge: int) -> int:
        return int(self.words[word].values[edge])


class RecordingOracles:
    """Prover side: answers from the words and records Merkle openings."""

    def __init__(self, words: list[EdgeWord], trees: list[MerkleCommitment]):
        self.words = words
        self.trees = trees
        self.openings: list[Opening] = []

    def open(self, word: int, edge: int) -> int:
        value = int(self.words[word].values[edge])
        self.openings.append(Opening(edge, value, self.trees[word].path(edge)))
        return value


class ProofOracles:
    """Verifier side: consumes openings in order and checks them against the roots."""

    def __init__(self, roots: list[bytes], leaf_counts: list[int], openings: list[Opening], fld):
        self.roots = roots
        self.leaf_counts = leaf_counts
        self.openings = openings
        self.field = fld
        self.pos = 0

    def open(self, word: int, edge: int) -> int:
        if self.pos >= len(self.openings):
            raise MalformedProof("proof has too few openings")
        op = self.openings[self.pos]
        self.pos += 1
        if op.leaf != edge:
            raise OpeningInvalid(f"opening for leaf {op.leaf}, expected {edge}")
        if not verify_path(self.roots[word], self.leaf_counts[word], edge, self.field.to_bytes(op.value), op.path):
            raise OpeningInvalid(f"authentication path fails for word {word}, leaf {edge}")
        return op.value

    @property
    def exhausted(self) -> bool:
        return self.pos == len(self.openings)


# -- query phase -------------------------------------------------------------------------
def run_query_repetition(
    params: ProtocolParams,
    rhos: list[int],
    coins: Coins,
    oracles: Oracles,
    final_view: list[int],
    counters: ComplexityCounters,
    strict: bool = True,
) -> str | None:
    """One repetition of the query phase.

    Returns None when every check passes.  With ``strict`` a failed check
    raises; otherwise the first failure is returned as a message and the walk
    continues (the prover uses this to emit every opening).
    """
    p = params.field.modulus
    n = params.n
    failure = None
    v = coins.index(params.graphs[0].vertex_count)
    counters.add("rand_vertices")
    J = partial_shuffle(coins, n, params.t)
    counters.add("rand_subsets")
    cache: dict[tuple[int, int, int], int] = {}
    for r in range(1, params.R + 1):
        c = params.rounds[r - 1]
        prev, cur = params.graphs[r - 1], params.graphs[r]
        cands = params.candidates[r - 1][v]
        i = cands[coins.index(len(cands))]
        counters.add("rand_cuts")
        u = int(params.inverse_maps[r - 1][i][v])
        rho = rhos[r - 1]
        for j in J:
            terms = []
            for pos in range(c.order):
                pv = int(c.isomorphisms[pos][u])
                key = (r - 1, pv, j)
                if key in cache:
                    terms.append(cache[key])
                else:
                    terms.append(oracles.open(r - 1, prev.edge(pv, j)))
                    counters.add("queries")
            acc = 0
            for x in reversed(terms):
                acc = (acc * rho + x) % p
            counters.add("verifier_ops", 2 * c.order - 2)
            if r == params.R:
                got = int(final_view[cur.edge(u, j)])
            else:
                got = oracles.open(r, cur.edge(u, j))
            counters.add("queries")
            cache[(r, u, j)] = got
            if acc != got and failure is None:
                failure = f"fold check failed at round {r}, vertex {u}, index {j}"
                if strict:
                    raise FoldMismatch(failure)
        v = u
    return failure


def final_check(params: ProtocolParams, final_view: list[int], counters: ComplexityCounters) -> bool:
    code = params.code
    counters.add("queries", params.n)
    counters.add("verifier_ops", (code.n - code.k) * (2 * code.n - 1))
    flower = params.graphs[-1]
    view = np.array([final_view[flower.edge(0, j)] for j in range(params.n)], dtype=np.int64)
    return not np.any(code.syndromes(view))


# -- prover ----------------------------------------------------------------------------------
@dataclass
class ProverResult:
    proof: Proof
    words: list[EdgeWord]
    rhos: list[int]
    counters: ComplexityCounters = field(default_factory=ComplexityCounters)


def commit_phase(
    params: ProtocolParams,
    f0: EdgeWord,
    coins: Coins,
    counters: ComplexityCounters,
    merkle: bool = True,
):
    """Honest folding: f_{r+1} = Fold(f_r, rho_r), each committed before rho_{r+1}.

    Without ``merkle`` no trees are built and the coins observe empty roots,
    which is only meaningful for interactive coins.
    """
    if not f0.rim.same_structure(params.graphs[0]) or f0.field != params.field:
        raise ShapeMismatch("input word does not live on the protocol's first graph")
    p = params.field.modulus
    words, trees, rhos = [f0], [commit_word(f0) if merkle else None], []
    coins.observe(trees[0].root if merkle else b"")
    for r, c in enumerate(params.rounds):
        rho = coins.field_element(p)
        counters.add("rand_field")
        rhos.append(rho)
        nxt = EdgeWord(c.child, f0.field, fold_values(words[-1].values, c, rho, p))
        counters.add("prover_ops", (2 * c.order - 1) * c.child.edge_count)
        counters.add("proof_length", c.child.edge_count)
        counters.add("rounds")
        words.append(nxt)
        trees.append(commit_word(nxt) if merkle else None)
        coins.observe(trees[-1].root if merkle else b"")
    return words, trees, rhos


def prove(f0: EdgeWord, params: ProtocolParams, coins: Coins | None = None) -> ProverResult:
    coins = coins if coins is not None else Transcript(params.digest)
    counters = ComplexityCounters()
    words, trees, rhos = commit_phase(params, f0, coins, counters)
    oracles = RecordingOracles(words, trees)
    final_view = [int(x) for x in words[-1].values]
    scratch = ComplexityCounters()  # the prover's replay of the checks is not verifier work
    for _ in range(params.L):
        run_query_repetition(params, rhos, coins, oracles, final_view, scratch, strict=False)
    counters.add("queries", scratch.queries + params.n)
    for name in ("rand_vertices", "rand_subsets", "rand_cuts"):
        counters.add(name, getattr(scratch, name))
    proof = Proof(
        modulus=params.field.modulus,
        n=params.n,
        k=params.k,
        R=params.R,
        L=params.L,
        t=params.t,
        orders=params.orders,
        input_root=trees[0].root,
        roots=[t.root for t in trees[1:]],
        final_view=final_view,
        openings=oracles.openings,
    )
    return ProverResult(proof, words, rhos, counters)


# -- verifier --------------------------------------------------------------------------------
@dataclass
class VerifyResult:
    accepted: bool
    reason: str
    counters: ComplexityCounters


def _check_header(proof: Proof, params: ProtocolParams) -> None:
    expect = (params.field.modulus, params.n, params.k, params.R, params.L, params.t, params.orders)
    got = (proof.modulus, proof.n, proof.k, proof.R, proof.L, proof.t, list(proof.orders))
    if got != expect:
        raise MalformedProof(f"proof parameters {got} do not match {expect}")
    if len(proof.roots) != params.R or len(proof.final_view) != params.n:
        raise MalformedProof("wrong number of roots or final values")


def verify(proof: Proof, params: ProtocolParams, input_root: bytes | None = None) -> VerifyResult:
    counters = ComplexityCounters()
    try:
        _check_header(proof, params)
        if input_root is not None and proof.input_root != input_root:
            raise Reject("input commitment does not match")
        fld = params.field
        final_view = list(proof.final_view)
        if params.R and merkle_commit([fld.to_bytes(x) for x in final_view]).root != proof.roots[-1]:
            raise OpeningInvalid("final view does not match the last commitment")
        coins = Transcript(params.digest)
        roots = [proof.input_root] + list(proof.roots)
        coins.observe(roots[0])
        rhos = []
        for r in range(params.R):
            rhos.append(coins.field_element(fld.modulus))
            counters.add("rand_field")
            coins.observe(roots[r + 1])
        counters.add("rounds", params.R)
        counters.add("proof_length", params.proof_length())
        leaf_counts = [g.edge_count for g in params.graphs]
        oracles = ProofOracles(roots, leaf_counts, proof.openings, fld)
        for _ in range(params.L):
            run_query_repetition(params, rhos, coins, oracles, final_view, counters, strict=True)
        if not oracles.exhausted:
            raise MalformedProof("proof has unused openings")
        if not final_check(params, final_view, counters):
            raise FinalCheckFailed("final local view is not a Reed-Solomon codeword")
    except (Reject, MalformedProof, FieldError) as exc:
        return VerifyResult(False, f"{type(exc).__name__}: {exc}", counters)
    return VerifyResult(True, "accept", counters)


def verify_bytes(data: bytes, params: ProtocolParams, input_root: bytes | None = None) -> VerifyResult:
    try:
        proof = Proof.from_bytes(data)
    except MalformedProof as exc:
        return VerifyResult(False, f"MalformedProof: {exc}", ComplexityCounters())
    return verify(proof, params, input_root)


def interactive_run(
    params: ProtocolParams,
    f0: EdgeWord,
    source,
) -> VerifyResult:
    """Honest prover against a verifier with true randomness, no Merkle layer."""
    coins = RandomCoins(source)
    counters = ComplexityCounters()
    words, _, rhos = commit_phase(params, f0, coins, counters, merkle=False)
    return check_committed(params, words, rhos, coins, counters)


def check_committed(
    params: ProtocolParams,
    words: list[EdgeWord],
    rhos: list[int],
    coins: Coins,
    counters: ComplexityCounters | None = None,
) -> VerifyResult:
    """Query phase against words already committed (any prover strategy)."""
    counters = counters or ComplexityCounters()
    oracles = DirectOracles(words)
    final_view = [int(x) for x in words[-1].values]
    try:
        for _ in range(params.L):
            run_query_repetition(params, rhos, coins, oracles, final_view, counters, strict=True)
        if not final_check(params, final_view, counters):
            raise FinalCheckFailed("final local view is not a Reed-Solomon codeword")
    except Reject as exc:
        return VerifyResult(False, f"{type(exc).__name__}: {exc}", counters)
    return VerifyResult(True, "accept", counters)
