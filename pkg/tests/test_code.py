import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowering.code import (
    UNKNOWN,
    CodeError,
    GraphCode,
    LengthMismatch,
    RSCode,
    TooLarge,
    corrupt_edges,
    dimension_lower_bound,
    graph_membership,
    interpolate,
    invalid_fraction,
    min_distance_bruteforce,
    poly_degree,
    rs_distance,
    rs_is_member,
    rs_is_member_interpolation,
)
from flowering.field import PrimeField
from flowering.linalg import rank_mod
from flowering.rim import EdgeWord

F3, F5, F7, F101 = (PrimeField(p) for p in (3, 5, 7, 101))


def test_rs_membership_examples():
    squares = [x * x % 101 for x in range(6)]
    assert rs_is_member(squares, RSCode(F101, 6, 3))
    assert not rs_is_member(squares, RSCode(F101, 6, 2))
    for k in range(1, 7):
        assert rs_is_member([0] * 6, RSCode(F101, 6, k))


def test_rs_code_bounds():
    with pytest.raises(CodeError):
        RSCode(F3, 4, 2)  # only three evaluation points
    with pytest.raises(CodeError):
        RSCode(F7, 3, 0)
    with pytest.raises(LengthMismatch):
        rs_distance([1, 2], RSCode(F7, 3, 1))


def test_rs_distance_examples():
    code = RSCode(F101, 6, 3)
    c = code.encode([4, 0, 7])
    assert rs_distance(c, code) == 0
    c2 = c.copy()
    c2[2] = (c2[2] + 1) % 101
    assert rs_distance(c2, code) == 1
    assert rs_distance([1, 1, 2, 2], RSCode(F7, 4, 1)) == 2
    with pytest.raises(TooLarge):
        rs_distance([0] * 17, RSCode(F101, 17, 2))


def test_interpolation():
    xs, ys = [0, 1, 2], [1, 4, 9]  # (x + 1)^2
    assert interpolate(xs, ys, 101) == [1, 2, 1]
    assert poly_degree([0, 0, 0]) == -1 and poly_degree([3, 0, 5, 0]) == 2


@settings(max_examples=200)
@given(st.integers(1, 6), st.lists(st.integers(0, 100), min_size=6, max_size=6))
def test_parity_matches_interpolation(k, v):
    code = RSCode(F101, 6, k)
    assert rs_is_member(v, code) == rs_is_member_interpolation(v, code)
    assert (rs_distance(v, code) == 0) == rs_is_member(v, code)


@settings(max_examples=100)
@given(st.integers(1, 5), st.randoms(use_true_random=False), st.integers(0, 100))
def test_rs_linearity(k, rnd, scalar):
    code = RSCode(F101, 6, k)
    a = code.encode([rnd.randrange(101) for _ in range(k)])
    b = code.encode([rnd.randrange(101) for _ in range(k)])
    assert rs_is_member((a + b) % 101, code)
    assert rs_is_member(a * scalar % 101, code)


def _k4_code(fld, k=2, seq=None):
    from flowering.instances import k4_sequence

    g = (seq or k4_sequence()).graphs[0]
    return GraphCode(g, RSCode(fld, 3, k))


def test_k4_dimension():
    gc = _k4_code(F7)
    assert gc.dimension == 2
    assert dimension_lower_bound(gc.graph, 2) == 2


def test_full_k_gives_full_space():
    gc = _k4_code(F7, k=3)
    assert gc.dimension == gc.graph.edge_count


def test_basis_words_are_members_and_independent(a4_seq):
    for g in a4_seq.graphs:
        gc = GraphCode(g, RSCode(F101, 3, 2))
        B = gc.basis()
        assert rank_mod(B, 101) == gc.dimension
        assert all(graph_membership(w, gc) for w in gc.basis_words())


def test_membership_matches_vertex_interpolation():
    gc = _k4_code(F7)
    src = random.Random(11)
    code = gc.base
    for _ in range(200):
        f = EdgeWord(gc.graph, F7, [src.randrange(7) for _ in range(6)])
        per_vertex = all(rs_is_member_interpolation(f.local_view(v), code) for v in range(4))
        assert graph_membership(f, gc) == per_vertex
    assert graph_membership(EdgeWord.zeros(gc.graph, F7), gc)


def test_sampling(a4_seq):
    gc = GraphCode(a4_seq.graphs[0], RSCode(F101, 3, 2))
    src = random.Random(12)
    words = gc.sample_codewords(src, 1000)
    assert all(graph_membership(w, gc) for w in words[:100])
    assert not np.any(gc.codeword_from_free([0] * gc.dimension).values)
    # every edge is free of forcing here, so each column should look uniform on F_101
    vals = np.stack([w.values for w in words])
    for e in range(gc.graph.edge_count):
        counts = np.bincount(vals[:, e], minlength=101)
        chi2 = float(((counts - 1000 / 101) ** 2 / (1000 / 101)).sum())
        assert chi2 < 180  # 100 degrees of freedom, far beyond the 0.9999 quantile


def test_dimension_bound_all_graphs(a4_seq, k4_seq, z2r3_seq):
    for seq in (a4_seq, k4_seq, z2r3_seq):
        n = seq.arity
        for g in seq.graphs:
            for k in range(-(-n // 2), n):
                gc = GraphCode(g, RSCode(F101, n, k))
                assert gc.dimension >= dimension_lower_bound(g, k)


def _enumerate_min_distance(gc, fld):
    """Walk every word of F^E and keep the lightest nonzero member."""
    best = None
    p = fld.modulus
    E = gc.graph.edge_count
    code = gc.base
    for vals in itertools.product(range(p), repeat=E):
        if not any(vals):
            continue
        f = EdgeWord(gc.graph, fld, vals)
        if all(rs_is_member_interpolation(f.local_view(v), code) for v in range(gc.graph.vertex_count)):
            wt = sum(1 for x in vals if x)
            best = wt if best is None else min(best, wt)
    return best


def test_k4_f3_min_distance_oracle():
    gc = _k4_code(F3)
    assert gc.dimension == 2
    assert min_distance_bruteforce(gc) == 4
    assert _enumerate_min_distance(gc, F3) == 4


def test_a4_min_distances(a4_seq):
    assert min_distance_bruteforce(GraphCode(a4_seq.graphs[0], RSCode(F3, 3, 2))) == 6
    assert min_distance_bruteforce(GraphCode(a4_seq.graphs[0], RSCode(F5, 3, 2))) == 7


def test_min_distance_unknown():
    # k = 1 forces one constant on a connected graph: dimension 1, full weight
    const = _k4_code(F7, k=1)
    assert const.dimension == 1 and min_distance_bruteforce(const) == 6
    assert min_distance_bruteforce(_k4_code(F101, k=3), budget=1000) is UNKNOWN
    assert not UNKNOWN


def test_invalid_fraction_and_corruption(a4_seq):
    gc = GraphCode(a4_seq.graphs[0], RSCode(F101, 3, 2))
    src = random.Random(13)
    c = gc.sample_codeword(src)
    assert invalid_fraction(c, gc.base) == 0
    bad = corrupt_edges(c, 1, src)
    # one corrupted edge spoils its two endpoints and nothing else
    assert invalid_fraction(bad, gc.base) == Fraction(2, 12)
    assert int(np.count_nonzero(bad.values != c.values)) == 1
