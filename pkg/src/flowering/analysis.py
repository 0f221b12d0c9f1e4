"""Spectra, expander bounds, soundness optimisation and parameter reports."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lps import BadCongruence, legendre, quaternion_solutions
from .field import is_probable_prime
from .rim import RIM

SPECTRUM_MAX_VERTICES = 4000
RAMANUJAN_TOL = 1e-6
GOLDEN = (math.sqrt(5) - 1) / 2


class TooLarge(ValueError):
    pass


# -- spectrum ---------------------------------------------------------------------
@dataclass(frozen=True)
class SpectrumReport:
    degree: int
    eigenvalues: tuple[float, ...]  # decreasing absolute value
    bipartite: bool
    nontrivial: float  # max |lambda| after removing +n (and -n if bipartite)

    @property
    def lambda_bar(self) -> float:
        """|lambda_2| / n with eigenvalues ordered by absolute value (bipartite graphs give 1)."""
        if len(self.eigenvalues) < 2:
            return 0.0
        return abs(self.eigenvalues[1]) / self.degree

    @property
    def lambda_nontrivial(self) -> float:
        return self.nontrivial / self.degree

    @property
    def ramanujan(self) -> bool:
        return is_ramanujan(self)

    @property
    def trace(self) -> float:
        return float(sum(self.eigenvalues))


def is_bipartite(g: RIM) -> bool:
    colour = np.full(g.vertex_count, -1, dtype=np.int64)
    nb = g.neighbor
    for s in range(g.vertex_count):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in nb[v]:
                w = int(w)
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


def adjacency_spectrum(g: RIM) -> SpectrumReport:
    if g.vertex_count > SPECTRUM_MAX_VERTICES:
        raise TooLarge(f"dense eigensolve limited to {SPECTRUM_MAX_VERTICES} vertices")
    eig = np.linalg.eigvalsh(g.adjacency_matrix())
    order = np.argsort(-np.abs(eig), kind="stable")
    eig = eig[order]
    n = g.arity
    bip = is_bipartite(g)
    rest = list(eig)
    rest.pop(int(np.argmin([abs(x - n) for x in rest])))
    if bip and rest:
        rest.pop(int(np.argmin([abs(x + n) for x in rest])))
    nontrivial = max((abs(x) for x in rest), default=0.0)
    return SpectrumReport(n, tuple(float(x) for x in eig), bip, float(nontrivial))


def is_ramanujan(report: SpectrumReport) -> bool:
    return report.nontrivial <= 2 * math.sqrt(report.degree - 1) + RAMANUJAN_TOL


# -- bounds -----------------------------------------------------------------------
def rs_relative_distance(n: int, k: int) -> Fraction:
    """(n - k + 1) / n."""
    return Fraction(n - k + 1, n)


def distance_bound(delta, lam: float) -> float:
    """delta (delta - lambda), clamped at zero."""
    delta = float(delta)
    return max(0.0, delta * (delta - lam))


def diameter_bound(vertices: int, lam: float) -> float:
    """2 log(|V|/2) / log((3 - lambda)/2) + 3."""
    if vertices < 2:
        raise ValueError("need at least two vertices")
    if not lam < 1:
        raise ValueError("need lambda < 1")
    return 2 * math.log(vertices / 2) / math.log((3 - lam) / 2) + 3


def round_bound(vertices: int, lam: float, n_base: int) -> int:
    return n_base * math.ceil(diameter_bound(vertices, lam))


# -- soundness --------------------------------------------------------------------
@dataclass(frozen=True)
class SoundnessBound:
    eps: float
    commit: float
    query: float

    @property
    def total(self) -> float:
        return self.commit + self.query


def soundness_terms(eps: float, orders, field_size: int, mu: float, L: int, delta: float) -> SoundnessBound:
    """sum_r (m_r - 1)/(eps |F|) and (1 - mu (delta - R eps))^L."""
    R = len(orders)
    commit = sum(m - 1 for m in orders) / (eps * field_size)
    base = 1 - mu * (float(delta) - R * eps)
    return SoundnessBound(eps, commit, min(1.0, max(0.0, base)) ** L)


def soundness_bound(orders, field_size: int, mu: float, L: int, delta, tol: float = 1e-9) -> SoundnessBound:
    """Minimise the total over eps in (0, delta/R) by golden-section search.

    Both terms are convex in eps on that interval, so the total is unimodal.
    """
    delta = float(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    R = len(orders)
    lo, hi = 0.0, delta / R

    def total(e: float) -> float:
        return soundness_terms(e, orders, field_size, mu, L, delta).total

    a = hi - GOLDEN * (hi - lo)
    b = lo + GOLDEN * (hi - lo)
    fa, fb = total(a), total(b)
    while hi - lo > tol:
        if fa < fb:
            hi, b, fb = b, a, fa
            a = hi - GOLDEN * (hi - lo)
            fa = total(a)
        else:
            lo, a, fa = a, b, fb
            b = lo + GOLDEN * (hi - lo)
            fb = total(b)
    return soundness_terms((lo + hi) / 2, orders, field_size, mu, L, delta)


def soundness_bound_grid(orders, field_size: int, mu: float, L: int, delta, points: int = 10_000) -> SoundnessBound:
    """Grid oracle for the same minimisation."""
    R = len(orders)
    hi = float(delta) / R
    grid = [hi * (i + 1) / (points + 1) for i in range(points)]
    return min(
        (soundness_terms(e, orders, field_size, mu, L, delta) for e in grid),
        key=lambda s: s.total,
    )


# -- reports ----------------------------------------------------------------------
@dataclass
class ParameterReport:
    title: str
    values: dict[str, object] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __getitem__(self, key: str):
        return self.values[key]

    def text(self) -> str:
        width = max((len(k) for k in self.values), default=0)
        lines = [self.title, "=" * len(self.title)]
        for k, v in self.values.items():
            lines.append(f"{k.ljust(width)}  {_fmt(v)}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)

    def key_values(self) -> str:
        return "\n".join(f"{k}={_fmt(v)}" for k, v in self.values.items())


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, Fraction):
        return f"{v} ({float(v):.6g})"
    return str(v)


def field_bits(log2_threshold: float) -> tuple[int, int]:
    """(floor, ceil) of log2 of a field-size threshold."""
    return math.floor(log2_threshold), math.ceil(log2_threshold)


def comparison_report(
    N: int,
    K: int,
    security: int,
    kappa: float,
    n: int = 6,
    delta: float = 0.25,
    L: int | None = None,
    field_log2: float | None = None,
) -> ParameterReport:
    """Closed-form complexity and soundness rows for FRI, STIR and both Flowering variants.

    Logarithms are base 2.  Field-size thresholds are reported as exact log2
    values with two integer conventions: ``*_floor_bits`` (the threshold
    exceeds 2^floor) and ``*_ceil_bits`` (a field larger than 2^ceil meets it).
    """
    if not N > K >= 1:
        raise ValueError("need N > K >= 1")
    lam = security
    logN, logK = math.log2(N), math.log2(K)
    rate = K / N
    fri_gap = min(delta, 1 - math.sqrt(rate))
    flow_gap = delta + logN / N
    if L is None:
        # repetitions for the query term to reach 2^-lambda under the Flowering formula
        L = math.ceil(lam / -math.log2(1 - flow_gap))
    fri_bits = lam + math.log2(1e7) + 3.5 * logN + math.log2(logK) - 1.5 * logK
    stir_bits = math.log2(lam) + lam + 2 * logK + 3.5 * logN - math.log2(math.log2(N / K))
    dmr_bits = lam + logN + math.log2(logN)
    flow_bits = lam + 1 + math.log2(kappa) + logN + math.log2(logN)
    if field_log2 is None:
        field_log2 = math.ceil(flow_bits)
    F = 2.0**field_log2
    rep = ParameterReport(f"comparison N=2^{logN:g} K=2^{logK:g} lambda={lam} kappa={kappa:g}")
    v = rep.values
    v.update({"N": N, "K": K, "security": lam, "kappa": kappa, "n": n, "delta": delta, "L": L})
    for name, bits in (("fri", fri_bits), ("stir", stir_bits), ("flowering_orig", dmr_bits), ("flowering", flow_bits)):
        lo, hi = field_bits(bits)
        v[f"{name}_field_log2"] = bits
        v[f"{name}_field_floor_bits"] = lo
        v[f"{name}_field_ceil_bits"] = hi
    v.update(
        {
            "fri_prover": 8 * N,
            "stir_prover_order": N,
            "flowering_orig_prover": 3 * N,
            "flowering_prover": 5 * kappa * N * logN,
            "fri_verifier": 2 * lam * logK / fri_gap,
            "stir_verifier_order": lam**2 + lam * math.log2(logK),
            "flowering_orig_verifier": 4 * lam * logN**2 / flow_gap,
            "flowering_verifier": 8 * lam * n * kappa * logN / flow_gap,
            "fri_queries": 2 * lam * logK / fri_gap,
            "stir_queries_order": lam * math.log2(logK),
            "flowering_orig_queries": 2 * lam * logN**2 / flow_gap,
            "flowering_queries": 3 * lam * n * kappa * logN / flow_gap,
            "fri_rounds": logK,
            "stir_rounds_order": logK,
            "flowering_orig_rounds": logN,
            "flowering_rounds": kappa * logN,
            "fri_length": N,
            "stir_length": N + logK,
            "flowering_orig_length": N,
            "flowering_length": kappa * N * logN,
            "field_log2_used": field_log2,
        }
    )
    fri_commit = 1e7 * N**3.5 * logK / (K**1.5 * F)
    dmr_commit = N * logN / F
    flow_commit = 2 * kappa * N * logN / F
    fri_query = (1 - min(delta, 1 - 1.05 * math.sqrt(rate))) ** L
    flow_query = max(0.0, 1 - delta - logN / N) ** L
    v.update(
        {
            "fri_commit_soundness": fri_commit,
            "flowering_orig_commit_soundness": dmr_commit,
            "flowering_commit_soundness": flow_commit,
            "fri_query_soundness": fri_query,
            "flowering_query_soundness": flow_query,
            "fri_total_soundness": fri_commit + fri_query,
            "flowering_orig_total_soundness": dmr_commit + flow_query,
            "flowering_total_soundness": flow_commit + flow_query,
        }
    )
    rep.notes.append("logarithms base 2; *_floor_bits: threshold > 2^floor; *_ceil_bits: any field > 2^ceil suffices")
    rep.notes.append("STIR rows are asymptotic orders with unit constants")
    return rep


def lps_vertex_count(p: int, q: int) -> int:
    full = (q - 1) * q * (q + 1)
    return full // 2 if legendre(p, q) == 1 else full


def case_study(
    p: int,
    q: int,
    k: int,
    field_log2: float = 61,
    L: int = 64,
    mu: float = 1.0,
    spectrum: SpectrumReport | None = None,
    measured_diameter: int | None = None,
) -> ParameterReport:
    """Parameters of the LPS(p, q) graph code with RS[p+1, k] local codes.

    Two expansion constants are reported: lambda = 1/sqrt(p) as stated for
    this family, and 2 sqrt(p)/(p+1), which is what the Ramanujan property
    actually guarantees.  The bounds are evaluated with both.
    """
    if not (is_probable_prime(p) and is_probable_prime(q)) or p % 4 != 1 or q % 4 != 1 or p == q:
        raise BadCongruence("need distinct primes p, q = 1 mod 4")
    if q * q <= 4 * p:
        raise BadCongruence("need q > 2 sqrt(p)")
    n = p + 1
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < p + 1")
    V = lps_vertex_count(p, q)
    N = n * V // 2
    n_base = len(quaternion_solutions(p)) // 2
    delta = rs_relative_distance(n, k)
    lam_stated = 1 / math.sqrt(p)
    lam_ramanujan = 2 * math.sqrt(p) / (p + 1)
    rep = ParameterReport(f"LPS case study p={p} q={q} k={k}")
    v = rep.values
    v.update(
        {
            "group": "PSL2" if legendre(p, q) == 1 else "PGL2",
            "vertices": V,
            "N": N,
            "n": n,
            "n_base": n_base,
            "dimension_bound": (k - Fraction(n, 2)) * V,
            "delta": delta,
            "lambda_stated": lam_stated,
            "lambda_ramanujan": lam_ramanujan,
            "distance_bound_stated": distance_bound(delta, lam_stated),
            "distance_bound_ramanujan": distance_bound(delta, lam_ramanujan),
            "diameter_bound_stated": diameter_bound(V, lam_stated),
            "diameter_bound_ramanujan": diameter_bound(V, lam_ramanujan),
            "round_bound_stated": round_bound(V, lam_stated, n_base),
            "round_bound_ramanujan": round_bound(V, lam_ramanujan, n_base),
        }
    )
    v["kappa_stated"] = v["round_bound_stated"] / math.log2(N)
    v["kappa_ramanujan"] = v["round_bound_ramanujan"] / math.log2(N)
    R = v["round_bound_stated"]
    sb = soundness_bound([3] * R, 2**field_log2, mu, L, delta)
    v.update(
        {
            "field_log2": field_log2,
            "L": L,
            "mu": mu,
            "optimal_eps": sb.eps,
            "commit_soundness": sb.commit,
            "query_soundness": sb.query,
            "total_soundness": sb.total,
        }
    )
    if spectrum is not None:
        v["measured_nontrivial"] = spectrum.nontrivial
        v["measured_lambda"] = spectrum.lambda_nontrivial
        v["ramanujan"] = spectrum.ramanujan
    if measured_diameter is not None:
        v["measured_diameter"] = measured_diameter
        v["diameter_slack"] = v["diameter_bound_stated"] - measured_diameter
    rep.notes.append("soundness terms use m = 3 in every round and the stated round bound")
    return rep
