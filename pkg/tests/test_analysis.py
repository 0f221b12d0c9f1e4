import math
from fractions import Fraction

import numpy as np
import pytest

from flowering.analysis import (
    adjacency_spectrum,
    case_study,
    comparison_report,
    diameter_bound,
    distance_bound,
    field_bits,
    is_bipartite,
    is_ramanujan,
    lps_vertex_count,
    round_bound,
    rs_relative_distance,
    soundness_bound,
    soundness_bound_grid,
    soundness_terms,
)
from flowering.rim import build_rim


def cycle(n):
    return build_rim(2, [[(v + 1) % n, (v - 1) % n] for v in range(n)])


def test_k4_spectrum(k4_seq):
    rep = adjacency_spectrum(k4_seq.graphs[0])
    assert np.allclose(sorted(rep.eigenvalues), [-1, -1, -1, 3])
    assert rep.nontrivial == pytest.approx(1)
    assert not rep.bipartite and is_ramanujan(rep)


def test_cycle_spectra():
    c4 = adjacency_spectrum(cycle(4))
    assert np.allclose(sorted(c4.eigenvalues), [-2, 0, 0, 2], atol=1e-12)
    assert c4.bipartite and c4.lambda_bar == pytest.approx(1)
    assert c4.nontrivial == pytest.approx(0, abs=1e-12)
    c6 = adjacency_spectrum(cycle(6))
    assert c6.nontrivial == pytest.approx(1) and c6.ramanujan


def test_bipartite_detection(a4_seq):
    assert is_bipartite(cycle(6)) and not is_bipartite(cycle(5))
    assert not is_bipartite(a4_seq.graphs[0])


def test_spectrum_trace_is_loop_count(a4_seq):
    for g in a4_seq.graphs:
        rep = adjacency_spectrum(g)
        assert rep.trace == pytest.approx(float(np.trace(g.adjacency_matrix())))


def test_distance_bound_examples():
    assert distance_bound(Fraction(1, 2), 0) == pytest.approx(0.25)
    assert distance_bound(0.3, 0.4) == 0
    delta = rs_relative_distance(6, 4)
    assert delta == Fraction(1, 2)  # (p - k + 2)/(p + 1) with p = 5
    assert distance_bound(delta, 1 / math.sqrt(5)) == pytest.approx(0.5 * (0.5 - 1 / math.sqrt(5)))
    assert distance_bound(delta, 1 / math.sqrt(5)) == pytest.approx(0.0264, abs=1e-4)


def test_diameter_bound_examples():
    assert diameter_bound(2, 0.3) == 3
    lam = 1 / math.sqrt(5)
    want = 2 * math.log(1092) / math.log((3 - lam) / 2) + 3
    assert diameter_bound(2184, lam) == pytest.approx(want)
    assert diameter_bound(2184, lam) == pytest.approx(60.333, abs=1e-3)
    assert round_bound(2184, lam, 3) == 3 * 61
    with pytest.raises(ValueError):
        diameter_bound(10, 1.0)


def test_soundness_bound_matches_grid():
    for orders, p, mu, L, delta in [
        ([3, 2, 3], 101, 1.0, 4, 0.5),
        ([2] * 10, 2**31 - 1, 0.5, 16, 0.3),
        ([3] * 40, 2**61, 1.0, 64, 0.5),
    ]:
        gs = soundness_bound(orders, p, mu, L, delta)
        grid = soundness_bound_grid(orders, p, mu, L, delta)
        assert gs.total <= grid.total + 1e-9
        assert gs.total == pytest.approx(grid.total, rel=1e-3, abs=1e-12)
        assert 0 < gs.eps < delta / len(orders)


def test_soundness_large_field_limit():
    sb = soundness_bound([3] * 5, 2**200, 0.8, 10, 0.4)
    assert sb.total == pytest.approx((1 - 0.8 * 0.4) ** 10, rel=1e-6)


def test_soundness_terms():
    t = soundness_terms(0.05, [3, 3], 1000, 1.0, 2, 0.5)
    assert t.commit == pytest.approx(4 / 50)
    assert t.query == pytest.approx((1 - 0.4) ** 2)
    with pytest.raises(ValueError):
        soundness_bound([3], 101, 1.0, 2, 0)


def test_field_bits():
    assert field_bits(159.248) == (159, 160)
    assert field_bits(194.9) == (194, 195)


def test_comparison_report_thresholds():
    rep = comparison_report(2**19, 2**18, 128, 2**7)
    assert rep["flowering_field_log2"] == pytest.approx(128 + 1 + 7 + 19 + math.log2(19))
    assert rep["flowering_field_ceil_bits"] == 160
    assert rep["fri_field_floor_bits"] == 194
    assert rep["flowering_orig_field_log2"] < rep["flowering_field_log2"]
    assert "flowering_field_ceil_bits=160" in rep.key_values()
    assert rep.text().splitlines()[0].startswith("comparison")
    with pytest.raises(ValueError):
        comparison_report(4, 8, 128, 128)


def test_case_study():
    rep = case_study(5, 13, 4)
    assert rep["vertices"] == lps_vertex_count(5, 13) == 2184
    assert rep["dimension_bound"] == 2184
    assert rep["lambda_stated"] == pytest.approx(1 / math.sqrt(5))
    assert rep["lambda_ramanujan"] == pytest.approx(2 * math.sqrt(5) / 6)
    assert rep["n_base"] == 3
    assert rep["round_bound_stated"] == 183
    assert lps_vertex_count(13, 17) == 16 * 17 * 18 // 2


def test_lps_spectrum(lps_5_13):
    rep = adjacency_spectrum(lps_5_13[2].rim)
    assert rep.bipartite and rep.lambda_bar == pytest.approx(1)
    assert rep.nontrivial <= 2 * math.sqrt(5) + 1e-6
    assert rep.ramanujan
    assert rep.nontrivial == pytest.approx(4.2497, abs=1e-3)
