"""Exact law of the verifier's query walk through the blossoming rounds."""

from __future__ import annotations

from fractions import Fraction

from ..rim import CutCollection, WeightFn


def walk_distribution(rounds: list[CutCollection]) -> list[list[Fraction]]:
    """Pr(v_r = v) for r = 0..R, by dynamic programming over the walk.

    v_0 is uniform; at round r a cut position i is drawn uniformly among those
    whose cut contains v_{r-1}, and v_r = phi_i^{-1}(v_{r-1}).
    """
    if not rounds:
        raise ValueError("no rounds")
    nv = rounds[0].parent.vertex_count
    dist = [Fraction(1, nv)] * nv
    out = [dist]
    for c in rounds:
        nxt = [Fraction(0)] * c.child.vertex_count
        for i, phi in enumerate(c.isomorphisms):
            for u, v in enumerate(phi):
                v = int(v)
                nxt[u] += dist[v] / int(c.multiplicity[v])
        out.append(nxt)
        dist = nxt
    return out


def weighted_law(w: WeightFn) -> list[Fraction]:
    """w(v) / |V|_w."""
    total = w.mass()
    return [x / total for x in w.weights]
