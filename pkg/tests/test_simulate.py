import random

import pytest

from flowering.code import GraphCode, RSCode, corrupt_edges, invalid_fraction
from flowering.field import PrimeField
from flowering.protocol import ProtocolParams, simulate_soundness, wilson_interval
from flowering.protocol.simulate import adversary_words

F101 = PrimeField(101)


def test_wilson_interval():
    lo, hi = wilson_interval(0, 100)
    assert lo == 0 and 0 < hi < 0.07
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi and hi - 0.5 == pytest.approx(0.5 - lo)
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


@pytest.fixture(scope="module")
def a4_far_word(a4_seq):
    gc = GraphCode(a4_seq.graphs[0], RSCode(F101, 3, 2))
    src = random.Random(1)
    c = gc.sample_codeword(src)
    return gc, c, corrupt_edges(c, 2, src)


def test_adversary_words_shapes(a4_seq, a4_far_word):
    gc, c, f0 = a4_far_word
    params = ProtocolParams.from_sequence(a4_seq, F101, 2, 2, mode="interactive")
    for strategy in ("honest-fold", "codeword-replacement"):
        words = adversary_words(strategy, params, f0, [5, 6, 7], c)
        assert [w.rim.vertex_count for w in words] == [12, 6, 3, 1]
    with pytest.raises(ValueError):
        adversary_words("codeword-replacement", params, f0, [5, 6, 7])
    with pytest.raises(ValueError):
        adversary_words("guess", params, f0, [5, 6, 7], c)


def test_codeword_is_always_accepted(a4_seq, a4_far_word):
    gc, c, _ = a4_far_word
    params = ProtocolParams.from_sequence(a4_seq, F101, 2, 2, mode="interactive")
    est = simulate_soundness(params, c, "honest-fold", 200, random.Random(2))
    assert est.accepted == 200 and est.delta == 0


def test_acceptance_decreases_with_repetitions(a4_seq, a4_far_word):
    gc, c, f0 = a4_far_word
    assert invalid_fraction(f0, gc.base) > 0
    rates = []
    for L in (1, 4):
        params = ProtocolParams.from_sequence(a4_seq, F101, 2, L, t=1, mode="interactive")
        rates.append(simulate_soundness(params, f0, "codeword-replacement", 2000, random.Random(3), c).rate)
    assert rates[1] < rates[0] < 1


def test_unknown_strategy(a4_seq, a4_far_word):
    _, _, f0 = a4_far_word
    params = ProtocolParams.from_sequence(a4_seq, F101, 2, 2, mode="interactive")
    with pytest.raises(ValueError):
        simulate_soundness(params, f0, "nope", 10, random.Random(0))
