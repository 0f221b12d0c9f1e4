"""Folding a word over a cut collection, and an exhaustive commit-soundness check."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .code import RSCode, invalid_fraction
from .linalg import _dtype, echelon, mul_mod
from .rim import CutCollection, EdgeWord, ShapeMismatch, WeightFn, refine_weights

EXHAUSTIVE_FIELD_LIMIT = 10_000


class FieldTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class FoldStep:
    collection: CutCollection
    challenge: int


def _parent_edges(c: CutCollection) -> np.ndarray:
    """(m, |E'|) parent edge ids read by each cut for each child edge."""
    n = c.parent.arity
    reps = c.child.edge_representatives
    u, j = reps // n, reps % n
    return np.stack([c.parent.edge_of[c.isomorphisms[i][u] * n + j] for i in range(c.order)])


def fold_values(values: np.ndarray, c: CutCollection, rho: int, p: int) -> np.ndarray:
    """Fold(f, rho)(v, j) = sum_i rho^i f(phi_i(v), j) on the child edges."""
    src = _parent_edges(c)
    acc = np.zeros(src.shape[1], dtype=np.int64)
    power = 1
    for i in range(c.order):
        acc = (acc + mul_mod(values[src[i]], power, p)) % p
        power = power * rho % p
    return acc


def fold(f: EdgeWord, step: FoldStep) -> EdgeWord:
    c = step.collection
    if not f.rim.same_structure(c.parent):
        raise ShapeMismatch("word does not live on the collection's parent graph")
    p = f.field.modulus
    return EdgeWord(c.child, f.field, fold_values(f.values, c, step.challenge % p, p))


def fold_op_count(c: CutCollection) -> int:
    """m multiplications and m-1 additions per child edge."""
    return (2 * c.order - 1) * c.child.edge_count


def fold_matrix(c: CutCollection, rho: int, p: int) -> np.ndarray:
    """Dense |E'| x |E| matrix of the linear map f -> Fold(f, rho)."""
    src = _parent_edges(c)
    M = np.zeros((src.shape[1], c.parent.edge_count), dtype=_dtype(p))
    rows = np.arange(src.shape[1])
    power = 1
    for i in range(c.order):
        np.add.at(M, (rows, src[i]), power)
        power = power * rho % p
    return M % p


# -- commit soundness --------------------------------------------------------------
@dataclass(frozen=True)
class CommitSoundnessResult:
    parent_distance: Fraction
    bad_count: int
    field_size: int
    bound: Fraction

    @property
    def bad_fraction(self) -> Fraction:
        return Fraction(self.bad_count, self.field_size)

    @property
    def holds(self) -> bool:
        return self.bad_fraction <= self.bound


def commit_bound(m: int, eps: Fraction, field_size: int) -> Fraction:
    return Fraction(m - 1) / (Fraction(eps) * field_size)


def commit_soundness_exhaustive(
    f: EdgeWord,
    c: CutCollection,
    w: WeightFn,
    eps: Fraction,
    code: RSCode,
) -> CommitSoundnessResult:
    """Count rho in F with Delta_w'(Fold(f,rho)) < Delta_w(f) - eps.

    Distances are weighted invalid-vertex fractions; w' is w refined by the
    collection's multiplicities.
    """
    p = f.field.modulus
    if p > EXHAUSTIVE_FIELD_LIMIT:
        raise FieldTooLarge(f"exhaustive check limited to |F| <= {EXHAUSTIVE_FIELD_LIMIT}")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    before = invalid_fraction(f, code, w)
    w_child = refine_weights(w, c)
    results = fold_all_challenges(f, c)
    bad = 0
    for rho in range(p):
        after = invalid_fraction(EdgeWord(c.child, f.field, results[rho]), code, w_child)
        if after < before - eps:
            bad += 1
    return CommitSoundnessResult(before, bad, p, commit_bound(c.order, eps, p))


def fold_all_challenges(f: EdgeWord, c: CutCollection) -> np.ndarray:
    """(|F|, |E'|) array whose row rho is Fold(f, rho)."""
    p = f.field.modulus
    src = _parent_edges(c)
    rhos = np.arange(p, dtype=np.int64)[:, None]
    acc = np.zeros((p, src.shape[1]), dtype=np.int64)
    power = np.ones_like(rhos)
    for i in range(c.order):
        acc = (acc + mul_mod(power, f.values[src[i]][None, :], p)) % p
        power = mul_mod(power, rhos, p)
    return acc


def targeted_word(
    c: CutCollection,
    code: RSCode,
    targets: list[int],
    source: random.Random,
) -> EdgeWord:
    """Uniform word whose fold is a codeword at every challenge in ``targets``.

    Such words are typically far from the code yet collapse to distance 0 on
    the chosen challenges, which is the situation the commit bound limits.
    """
    p = code.field.modulus
    H = code.parity_matrix
    nv_child = c.child.vertex_count
    n = c.child.arity
    blocks = []
    for rho in targets:
        F = fold_matrix(c, rho, p)
        # rows: per child vertex, parity of its local view of Fold(f, rho)
        local = F[c.child.edge_of.reshape(nv_child, n)]  # (|V'|, n, |E|)
        blocks.append(np.einsum("tj,vje->vte", H, local % p, dtype=object).reshape(-1, F.shape[1]) % p)
    system = np.concatenate(blocks).astype(_dtype(p)) if blocks else np.zeros((0, c.parent.edge_count))
    ech = echelon(system, p)
    free = np.array([[code.field.sample(source)] for _ in ech.free], dtype=_dtype(p))
    x = ech.solve_pivots(free.reshape(len(ech.free), 1))
    return EdgeWord(c.parent, code.field, x[:, 0])


def adversarial_words(
    c: CutCollection,
    code: RSCode,
    count: int,
    source: random.Random,
    codeword_sampler=None,
) -> list[EdgeWord]:
    """Mix of random words, corrupted codewords and fold-targeted words."""
    p = code.field.modulus
    parent = c.parent
    out: list[EdgeWord] = []
    for idx in range(count):
        kind = idx % 4
        if kind == 0:
            vals = [code.field.sample(source) for _ in range(parent.edge_count)]
            out.append(EdgeWord(parent, code.field, vals))
        elif kind == 1 and codeword_sampler is not None:
            base = codeword_sampler(source)
            vals = base.values.copy()
            hits = source.sample(range(parent.edge_count), source.randint(1, max(1, parent.edge_count // 3)))
            for e in hits:
                vals[e] = (int(vals[e]) + source.randrange(1, p)) % p
            out.append(EdgeWord(parent, code.field, vals))
        else:
            ntargets = 1 if kind == 2 else max(1, c.order - 1)
            targets = source.sample(range(p), ntargets)
            out.append(targeted_word(c, code, targets, source))
    return out
