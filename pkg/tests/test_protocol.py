import random

import numpy as np
import pytest

from flowering.code import GraphCode, RSCode, corrupt_edges, graph_membership
from flowering.field import PrimeField
from flowering.fold import FoldStep, fold
from flowering.protocol import (
    ComplexityCounters,
    ProtocolParams,
    commit_phase,
    interactive_run,
    prove,
    verify,
    verify_bytes,
)
from flowering.protocol.params import ParamsError
from flowering.protocol.transcript import RandomCoins
from flowering.protocol.walk import walk_distribution, weighted_law
from flowering.protocol.wire import MalformedProof, Proof
from flowering.rim import cut_word

F101 = PrimeField(101)


@pytest.fixture(scope="module")
def a4_setup(a4_seq):
    params = ProtocolParams.from_sequence(a4_seq, F101, 2, 4)
    gc = GraphCode(a4_seq.graphs[0], RSCode(F101, 3, 2))
    return params, gc


def test_params_validation(a4_seq):
    with pytest.raises(ParamsError):
        ProtocolParams.from_sequence(a4_seq, F101, 3, 2)  # k must be < n
    with pytest.raises(ParamsError):
        ProtocolParams.from_sequence(a4_seq, F101, 2, 0)
    with pytest.raises(ParamsError):
        ProtocolParams.from_sequence(a4_seq, F101, 2, 2, t=4)
    assert ProtocolParams.from_sequence(a4_seq, F101, 2, 2, mu=0.5).t == 1
    assert ProtocolParams.from_sequence(a4_seq, F101, 2, 2, mu=0.0).t == 1


def test_completeness_and_counters(a4_setup):
    params, gc = a4_setup
    src = random.Random(1)
    for _ in range(10):
        res = prove(gc.sample_codeword(src), params)
        out = verify(res.proof, params, res.proof.input_root)
        assert out.accepted, out.reason
        assert out.counters.queries == res.counters.queries == params.query_count()
        assert out.counters.verifier_ops == params.verifier_ops()
        assert out.counters.verifier_ops <= params.verifier_ops_bound()
        assert res.counters.prover_ops == params.prover_ops()
        assert res.counters.proof_length == out.counters.proof_length == params.proof_length()
        assert out.counters.rounds == params.R == 3
        assert res.counters.rand_field == params.R
        assert res.counters.rand_vertices == res.counters.rand_subsets == params.L
        assert res.counters.rand_cuts == params.L * params.R


def test_commit_round_chain(a4_setup):
    params, gc = a4_setup
    src = random.Random(2)
    f0 = gc.sample_codeword(src)
    words, trees, rhos = commit_phase(params, f0, RandomCoins(src), ComplexityCounters())
    for r, c in enumerate(params.rounds):
        assert words[r + 1] == fold(words[r], FoldStep(c, rhos[r]))
        child = GraphCode(c.child, RSCode(F101, 3, 2))
        assert graph_membership(words[r + 1], child)
    # rho = 0 restricts to V_0
    words0, _, _ = commit_phase(params, f0, _ZeroCoins(), ComplexityCounters())
    assert words0[1] == cut_word(f0, params.rounds[0].subsets[0])


class _ZeroCoins:
    def observe(self, root):
        pass

    def field_element(self, modulus):
        return 0

    def index(self, bound):
        return 0


def test_wire_round_trip(a4_setup):
    params, gc = a4_setup
    res = prove(gc.sample_codeword(random.Random(3)), params)
    data = res.proof.to_bytes()
    assert data[:4] == b"FLWR"
    back = Proof.from_bytes(data)
    assert back.to_bytes() == data
    assert back == res.proof


def test_truncated_and_extended_proofs_rejected(a4_setup):
    params, gc = a4_setup
    data = prove(gc.sample_codeword(random.Random(4)), params).proof.to_bytes()
    for bad in (data[:-1], data + b"\x00", data[:10], b""):
        with pytest.raises(MalformedProof):
            Proof.from_bytes(bad)
        assert not verify_bytes(bad, params).accepted


def test_wrong_input_root(a4_setup):
    params, gc = a4_setup
    res = prove(gc.sample_codeword(random.Random(5)), params)
    out = verify(res.proof, params, b"\x00" * 32)
    assert not out.accepted and "input commitment" in out.reason


def test_mismatched_params(a4_seq, a4_setup):
    params, gc = a4_setup
    data = prove(gc.sample_codeword(random.Random(6)), params).proof.to_bytes()
    other = ProtocolParams.from_sequence(a4_seq, F101, 2, 5)
    assert not verify_bytes(data, other).accepted


def test_corrupted_word_rejected(a4_setup):
    params, gc = a4_setup
    src = random.Random(7)
    rejected = 0
    for _ in range(20):
        f0 = corrupt_edges(gc.sample_codeword(src), 6, src)
        rejected += not verify(prove(f0, params).proof, params).accepted
    assert rejected >= 15


def test_interactive_completeness(a4_seq, a4_setup, z2r3_seq):
    _, gc = a4_setup
    src = random.Random(8)
    iparams = ProtocolParams.from_sequence(a4_seq, F101, 2, 3, mode="interactive")
    for _ in range(20):
        assert interactive_run(iparams, gc.sample_codeword(src), src).accepted
    zp = ProtocolParams.from_sequence(z2r3_seq, F101, 2, 3)
    zgc = GraphCode(z2r3_seq.graphs[0], RSCode(F101, 3, 2))
    for _ in range(20):
        assert interactive_run(zp, zgc.sample_codeword(src), src).accepted


def test_walk_law(a4_seq, k4_seq, z2r3_seq):
    for seq in (a4_seq, k4_seq, z2r3_seq):
        dist = walk_distribution(seq.rounds)
        for r in range(seq.R + 1):
            assert dist[r] == weighted_law(seq.weights[r])
            assert sum(dist[r]) == 1


def test_walk_matches_sampled_queries(a4_seq):
    """The protocol's own vertex walk reproduces the exact law statistically."""
    params = ProtocolParams.from_sequence(a4_seq, F101, 2, 1, t=1)
    dist = walk_distribution(a4_seq.rounds)
    src = random.Random(9)
    counts = np.zeros(a4_seq.graphs[1].vertex_count)
    trials = 6000
    for _ in range(trials):
        coins = RandomCoins(src)
        v = coins.index(12)
        cands = params.candidates[0][v]
        i = cands[coins.index(len(cands))]
        counts[int(params.inverse_maps[0][i][v])] += 1
    expect = np.array([float(x) for x in dist[1]]) * trials
    sigma = np.sqrt(expect)
    assert np.all(np.abs(counts - expect) < 5 * sigma)


def test_counters_monotone():
    c = ComplexityCounters()
    c.add("queries", 3)
    with pytest.raises(ValueError):
        c.add("queries", -1)
    assert c.as_dict()["queries"] == 3


def test_query_count_forms(a4_seq, z2r3_seq):
    p = ProtocolParams.from_sequence(z2r3_seq, F101, 2, 3, t=2)
    assert p.query_count() == p.query_count_constant_m() == (2 * 3 + 1) * 2 * 3 + 3
    a = ProtocolParams.from_sequence(a4_seq, F101, 2, 2)
    assert a.query_count() == 2 * 3 * (3 + 2 + 3 + 1) + 3
    with pytest.raises(ParamsError):
        a.query_count_constant_m()


def test_large_field_protocol(a4_seq):
    fld = PrimeField(2**61 - 1)
    params = ProtocolParams.from_sequence(a4_seq, fld, 2, 3)
    gc = GraphCode(a4_seq.graphs[0], RSCode(fld, 3, 2))
    res = prove(gc.sample_codeword(random.Random(10)), params)
    assert verify_bytes(res.proof.to_bytes(), params).accepted
