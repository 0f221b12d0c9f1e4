"""Finite groups, Cayley graphs and their blossoming sequences.

Group elements are hashable Python values.  Every group exposes
``identity``, ``mul``, ``inv``, ``encode`` and ``elements``; vertex ids of a
Cayley graph are the positions of the elements sorted by ``encode``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .rim import RIM, CutCollection, WeightFn, bfs_distances, refine_weights


class CayleyError(ValueError):
    pass


class NotGenerating(CayleyError):
    pass


class IdentityInS(CayleyError):
    pass


class CoverageFailure(RuntimeError):
    """The backward-built V_0 missed part of the group; the schedule is wrong."""


class FiniteGroup:
    name = "group"
    identity: Hashable

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def encode(self, a) -> bytes:
        raise NotImplementedError

    def elements(self) -> list:
        raise NotImplementedError

    def describe(self) -> dict[str, str]:
        return {"group": self.name}

    def power(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        out = self.identity
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def order_of(self, a) -> int:
        x, k = a, 1
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k


class PermutationGroup(FiniteGroup):
    """Group generated by permutations of {0..degree-1}; (a*b)(x) = a(b(x))."""

    def __init__(self, degree: int, generators: Sequence[Sequence[int]], name: str = "perm"):
        self.degree = degree
        self.name = name
        self.identity = tuple(range(degree))
        self._gens = [tuple(g) for g in generators]

    def mul(self, a, b):
        return tuple(a[x] for x in b)

    def inv(self, a):
        out = [0] * self.degree
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def encode(self, a) -> bytes:
        return bytes(a)

    def elements(self) -> list:
        return _closure(self, self._gens)


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """'(123)(4)' on points 1..degree as an image tuple on 0..degree-1."""
    perm = list(range(degree))
    for cyc in text.replace(" ", "").strip("()").split(")("):
        if not cyc:
            continue
        pts = [int(c) - 1 for c in cyc.split(",")] if "," in cyc else [int(c) - 1 for c in cyc]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


def alternating_group_4() -> PermutationGroup:
    return PermutationGroup(4, [parse_cycles("(123)", 4), parse_cycles("(12)(34)", 4)], name="A4")


class Z2Power(FiniteGroup):
    """(Z/2Z)^r as r-bit integers under xor."""

    def __init__(self, r: int):
        self.r = r
        self.name = f"Z2^{r}"
        self.identity = 0

    def mul(self, a, b):
        return a ^ b

    def inv(self, a):
        return a

    def encode(self, a) -> bytes:
        return a.to_bytes(max(1, (self.r + 7) // 8), "little")

    def elements(self) -> list:
        return list(range(1 << self.r))

    def describe(self) -> dict[str, str]:
        return {"group": "z2r", "r": str(self.r)}


def _closure(group: FiniteGroup, gens) -> list:
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = group.mul(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return list(seen)


@dataclass
class GeneratorSet:
    """Base list S_1 and its symmetric closure S with the index involution j -> bar(j).

    S lists each base generator followed by its inverse (when distinct and not
    already present), so index order is deterministic.
    """

    group: FiniteGroup
    base: list
    symmetric: list = field(init=False)
    bar: list[int] = field(init=False)

    def __post_init__(self):
        g = self.group
        if any(s == g.identity for s in self.base):
            raise IdentityInS("the identity cannot be a generator")
        sym: list = []
        for s in self.base:
            for x in (s, g.inv(s)):
                if x not in sym:
                    sym.append(x)
        self.symmetric = sym
        self.bar = [sym.index(g.inv(s)) for s in sym]

    @property
    def n(self) -> int:
        return len(self.symmetric)

    @property
    def n_base(self) -> int:
        return len(self.base)


@dataclass
class CayleyGraph:
    group: FiniteGroup
    gens: GeneratorSet
    elements: list
    index: dict
    rim: RIM

    @property
    def identity_id(self) -> int:
        return self.index[self.group.identity]


def build_cayley(group: FiniteGroup, gens: GeneratorSet) -> CayleyGraph:
    elems = sorted(group.elements(), key=group.encode)
    index = {g: i for i, g in enumerate(elems)}
    if any(s == group.identity for s in gens.symmetric):
        raise IdentityInS("the identity cannot be a generator")
    if len(_closure(group, gens.symmetric)) != len(elems):
        raise NotGenerating("S does not generate the group")
    n = gens.n
    nb = np.empty((len(elems), n), dtype=np.int64)
    for v, g in enumerate(elems):
        for j, s in enumerate(gens.symmetric):
            nb[v, j] = index[group.mul(g, s)]
    bar = np.asarray(gens.bar, dtype=np.int64)
    partner = (nb * n + bar[None, :]).reshape(-1)
    return CayleyGraph(group, gens, elems, index, RIM(n, nb, partner))


# -- schedule ------------------------------------------------------------------
@dataclass(frozen=True)
class ScheduleStep:
    base_index: int
    exponents: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.exponents)


def default_exponents(order: int, full_orbit: bool = False) -> tuple[int, ...]:
    """List positions of the cuts; position 0 is always the exponent 0."""
    if order == 2:
        return (0, 1)
    if full_orbit:
        return tuple(range(order))
    return (0, 1, -1)


def decomposition_schedule(
    gens: GeneratorSet,
    diameter: int,
    full_orbit: bool = False,
) -> list[ScheduleStep]:
    """R = n_base * diameter steps cycling through the base generators."""
    if diameter < 1:
        raise CayleyError("diameter must be >= 1")
    g = gens.group
    orders = [g.order_of(s) for s in gens.base]
    R = gens.n_base * diameter
    return [
        ScheduleStep(r % gens.n_base, default_exponents(orders[r % gens.n_base], full_orbit))
        for r in range(R)
    ]


# -- blossoming ------------------------------------------------------------------
@dataclass
class BlossomingSequence:
    cayley: CayleyGraph
    steps: list[ScheduleStep]
    graphs: list[RIM]
    rounds: list[CutCollection]
    weights: list[WeightFn]
    full_length: int

    @property
    def R(self) -> int:
        return len(self.rounds)

    @property
    def orders(self) -> list[int]:
        return [c.order for c in self.rounds]

    @property
    def arity(self) -> int:
        return self.graphs[0].arity

    def generator(self, r: int):
        """Group element driving round r (1-based)."""
        return self.cayley.gens.base[self.steps[r - 1].base_index]


def _multiplicity_invariant(cuts: list[list[int]]) -> bool:
    """#v = #phi_i(v) where cuts[i][u] = phi_i(u-th element of the base set)."""
    mult: dict[int, int] = {}
    for cut in cuts:
        for v in cut:
            mult[v] = mult.get(v, 0) + 1
    base = cuts[0]
    return all(mult[cut[u]] == mult[base[u]] for cut in cuts for u in range(len(base)))


def build_blossoming(
    group: FiniteGroup,
    gens: GeneratorSet,
    *,
    trim: bool = True,
    full_orbit: bool = False,
    cayley: CayleyGraph | None = None,
) -> BlossomingSequence:
    """Cut/isomorphism/weight schedule from the Cayley graph down to the flower.

    V_{R,0} = {1}; walking backward, V_{r,0} is the union of s^a V_{r+1,0} over
    the step's exponents.  With ``trim`` a step whose union adds nothing (the
    cuts would all equal the whole graph) is dropped.
    """
    cay = cayley or build_cayley(group, gens)
    diam = int(bfs_distances(cay.rim, cay.identity_id).max())  # vertex-transitive
    if diam == 0:
        raise CayleyError("trivial group has no blossoming sequence")
    steps = decomposition_schedule(gens, diam, full_orbit=full_orbit)
    idx = cay.index
    elems = cay.elements

    def left(s, ids):
        return [idx[group.mul(s, elems[v])] for v in ids]

    sets: list[list[int]] = [[] for _ in range(len(steps) + 1)]
    sets[-1] = [cay.identity_id]
    for r in range(len(steps) - 1, -1, -1):
        s = gens.base[steps[r].base_index]
        cuts = [left(group.power(s, a), sets[r + 1]) for a in steps[r].exponents]
        if not _multiplicity_invariant(cuts):
            # {-1, 0, 1} is only shift-stable when ord(s) <= 3; the full cyclic orbit always is
            full = default_exponents(group.order_of(s), full_orbit=True)
            steps[r] = ScheduleStep(steps[r].base_index, full)
            cuts = [left(group.power(s, a), sets[r + 1]) for a in full]
        sets[r] = sorted(set().union(*cuts))
    if len(sets[0]) != len(elems):
        raise CoverageFailure(f"V_0 has {len(sets[0])} of {len(elems)} elements")

    kept = [r for r in range(len(steps)) if not trim or len(sets[r]) > len(sets[r + 1])]
    graphs = [cay.rim]
    rounds: list[CutCollection] = []
    weights = [WeightFn.uniform(cay.rim.vertex_count)]
    for r in kept:
        parent = graphs[-1]
        labels = parent.labels
        child_ids = sets[r + 1]
        s = gens.base[steps[r].base_index]
        subsets, isos = [], []
        for a in steps[r].exponents:
            img = np.searchsorted(labels, left(group.power(s, a), child_ids))
            isos.append(img)
            subsets.append(np.sort(img))
        coll = CutCollection(parent, subsets, isos)
        coll.validate()
        rounds.append(coll)
        graphs.append(coll.child)
        weights.append(refine_weights(weights[-1], coll))
    if graphs[-1].vertex_count != 1:
        raise CoverageFailure("sequence does not end at a single vertex")
    return BlossomingSequence(cay, [steps[r] for r in kept], graphs, rounds, weights, len(steps))
