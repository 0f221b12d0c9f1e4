"""Regular indexed multigraphs (RIMs), cut-graphs, words on edges and distances.

A RIM of arity n on vertices 0..|V|-1 is stored as two arrays:

* ``neighbor[v, j]``: the vertex reached from v through index j;
* ``partner[h]``: the involution on half-edges h = v*n + j that glues half-edges
  into edges.  A fixed point is a petal (a one-half-edge loop).

Edges are the orbits of ``partner``, ordered by their least half-edge.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .field import PrimeField
from .linalg import mul_mod


class RIMError(ValueError):
    pass


class PairingViolation(RIMError):
    pass


class NotInvolution(RIMError):
    pass


class EmptySubset(RIMError):
    pass


class SizeMismatch(RIMError):
    pass


class ShapeMismatch(RIMError):
    pass


class Disconnected(RIMError):
    pass


class RIM:
    def __init__(self, arity: int, neighbor, partner, labels=None):
        self.arity = int(arity)
        self.neighbor = np.asarray(neighbor, dtype=np.int64).reshape(-1, self.arity)
        self.partner = np.asarray(partner, dtype=np.int64).reshape(-1)
        self.vertex_count = self.neighbor.shape[0]
        # labels carry an outside identity per vertex (group element id, parent id)
        if labels is None:
            labels = np.arange(self.vertex_count, dtype=np.int64)
        self.labels = np.asarray(labels, dtype=np.int64)
        self._validate()
        self.neighbor.setflags(write=False)
        self.partner.setflags(write=False)

    def _validate(self):
        V, n = self.vertex_count, self.arity
        if V == 0:
            raise RIMError("a RIM needs at least one vertex")
        if self.partner.shape != (V * n,):
            raise RIMError("pairing must be total on V x [n]")
        if len(self.labels) != V:
            raise RIMError("one label per vertex")
        if self.neighbor.min() < 0 or self.neighbor.max() >= V:
            raise RIMError("neighbor map leaves the vertex set")
        if self.partner.min() < 0 or self.partner.max() >= V * n:
            raise NotInvolution("pairing leaves V x [n]")
        h = np.arange(V * n)
        if not np.array_equal(self.partner[self.partner], h):
            raise NotInvolution("pairing is not an involution")
        v = h // n
        pv = self.partner // n
        if not np.array_equal(self.neighbor.reshape(-1), pv):
            raise PairingViolation("neighbor(v, j) must be the vertex of the paired half-edge")
        fixed = self.partner == h
        if not np.array_equal(self.neighbor.reshape(-1)[fixed], v[fixed]):
            raise PairingViolation("a self-paired half-edge must be a loop")

    # -- edges ---------------------------------------------------------------
    @cached_property
    def _edge_tables(self):
        h = np.arange(self.vertex_count * self.arity)
        rep = np.minimum(h, self.partner)
        reps = np.unique(rep)
        edge_of = np.searchsorted(reps, rep)
        is_petal = self.partner[reps] == reps
        for arr in (reps, edge_of, is_petal):
            arr.setflags(write=False)
        return reps, edge_of, is_petal

    @property
    def edge_count(self) -> int:
        return len(self._edge_tables[0])

    @property
    def edge_representatives(self) -> np.ndarray:
        return self._edge_tables[0]

    @property
    def edge_of(self) -> np.ndarray:
        """Edge id of every half-edge, indexed by h = v*n + j."""
        return self._edge_tables[1]

    @property
    def edge_is_petal(self) -> np.ndarray:
        return self._edge_tables[2]

    @property
    def petal_count(self) -> int:
        return int(self.edge_is_petal.sum())

    @cached_property
    def petals_per_vertex(self) -> np.ndarray:
        fixed = self.partner == np.arange(self.vertex_count * self.arity)
        return fixed.reshape(self.vertex_count, self.arity).sum(axis=1)

    def edge(self, v: int, j: int) -> int:
        return int(self.edge_of[v * self.arity + j])

    def half_edge(self, h: int) -> tuple[int, int]:
        return divmod(int(h), self.arity)

    # -- misc ----------------------------------------------------------------
    def adjacency_matrix(self) -> np.ndarray:
        """Half-edge counts: a two-half-edge loop adds 2 to the diagonal, a petal adds 1."""
        V = self.vertex_count
        a = np.zeros((V, V), dtype=np.float64)
        rows = np.repeat(np.arange(V), self.arity)
        np.add.at(a, (rows, self.neighbor.reshape(-1)), 1.0)
        return a

    def digest(self) -> bytes:
        h = hashlib.sha256(b"rim")
        h.update(np.array([self.vertex_count, self.arity], dtype="<u4").tobytes())
        h.update(self.neighbor.astype("<u4").tobytes())
        h.update(self.partner.astype("<u4").tobytes())
        return h.digest()

    def same_structure(self, other: "RIM") -> bool:
        return (
            self.arity == other.arity
            and np.array_equal(self.neighbor, other.neighbor)
            and np.array_equal(self.partner, other.partner)
        )

    def __repr__(self) -> str:
        return f"RIM(|V|={self.vertex_count}, n={self.arity}, |E|={self.edge_count}, petals={self.petal_count})"


def build_rim(arity: int, neighbor, pairing=None, labels=None) -> RIM:
    """Build and validate a RIM.

    ``pairing`` maps each half-edge (v, j) to its partner, either as a flat
    array over h = v*n + j, a (|V|, n, 2) array, or a dict.  When omitted the
    pairing is derived: (v, j) pairs with the unique unused (u, j') pointing
    back at v, in increasing j' order; loops with no free partner become petals.
    """
    nb = np.asarray(neighbor, dtype=np.int64).reshape(-1, arity)
    V = nb.shape[0]
    if pairing is None:
        partner = _derive_pairing(nb)
    elif isinstance(pairing, dict):
        partner = np.empty(V * arity, dtype=np.int64)
        for (v, j), (u, k) in pairing.items():
            partner[v * arity + j] = u * arity + k
    else:
        arr = np.asarray(pairing, dtype=np.int64)
        if arr.ndim == 3:
            partner = (arr[..., 0] * arity + arr[..., 1]).reshape(-1)
        else:
            partner = arr.reshape(-1)
    return RIM(arity, nb, partner, labels)


def _derive_pairing(nb: np.ndarray) -> np.ndarray:
    V, n = nb.shape
    partner = np.full(V * n, -1, dtype=np.int64)
    for v in range(V):
        for j in range(n):
            h = v * n + j
            if partner[h] >= 0:
                continue
            u = int(nb[v, j])
            for k in range(n):
                g = u * n + k
                if g != h and partner[g] < 0 and nb[u, k] == v:
                    partner[h], partner[g] = g, h
                    break
            else:
                if u != v:
                    raise PairingViolation(f"half-edge ({v},{j}) has no return index")
                partner[h] = h
    return partner


def flower(arity: int) -> RIM:
    return RIM(arity, np.zeros((1, arity), dtype=np.int64), np.arange(arity))


def _subset_array(g: RIM, subset: Iterable[int]) -> np.ndarray:
    s = np.unique(np.fromiter((int(x) for x in subset), dtype=np.int64))
    if len(s) == 0:
        raise EmptySubset("cut subset is empty")
    if s[0] < 0 or s[-1] >= g.vertex_count:
        raise RIMError("cut subset is not inside the vertex set")
    return s


def cut_graph(g: RIM, subset: Iterable[int]) -> RIM:
    """Restriction to ``subset``; half-edges whose partner leaves become petals.

    The new vertex ids follow the increasing order of the parent ids, and the
    labels are inherited from the parent.
    """
    s = _subset_array(g, subset)
    n = g.arity
    local = np.full(g.vertex_count, -1, dtype=np.int64)
    local[s] = np.arange(len(s))
    nb = g.neighbor[s]
    inside = local[nb] >= 0
    v_new = np.repeat(np.arange(len(s)), n).reshape(len(s), n)
    new_nb = np.where(inside, local[np.where(inside, nb, 0)], v_new)
    ph = g.partner.reshape(-1, n)[s]
    pv, pj = ph // n, ph % n
    own = v_new * n + np.arange(n)
    new_partner = np.where(inside, local[np.where(inside, pv, 0)] * n + pj, own)
    return RIM(n, new_nb, new_partner.reshape(-1), g.labels[s])


def check_isomorphism(a: RIM, b: RIM, mapping: Sequence[int]) -> bool:
    """True iff mapping(E_a(v, j)) == E_b(mapping(v), j) for every half-edge."""
    phi = np.asarray(mapping, dtype=np.int64)
    if a.arity != b.arity or a.vertex_count != b.vertex_count or len(phi) != a.vertex_count:
        raise SizeMismatch("isomorphism needs equal sizes and arities")
    if len(np.unique(phi)) != len(phi) or phi.min() < 0 or phi.max() >= b.vertex_count:
        raise SizeMismatch("mapping is not a bijection onto the target vertices")
    return bool(np.array_equal(phi[a.neighbor], b.neighbor[phi]))


def preserves_pairing(a: RIM, b: RIM, mapping: Sequence[int]) -> bool:
    """The half-edge involution commutes with (v, j) -> (mapping(v), j)."""
    phi = np.asarray(mapping, dtype=np.int64)
    n = a.arity
    h = np.arange(a.vertex_count * n)
    img = phi[h // n] * n + h % n
    pa = a.partner
    return bool(np.array_equal(b.partner[img], phi[pa // n] * n + pa % n))


# -- words ---------------------------------------------------------------------
@dataclass(eq=False)
class EdgeWord:
    rim: RIM
    field: PrimeField
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.dtype == object or vals.dtype.kind != "i":
            vals = np.array([int(x) % self.field.modulus for x in vals], dtype=object)
            if self.field.modulus < (1 << 62):
                vals = vals.astype(np.int64)
        if vals.shape != (self.rim.edge_count,):
            raise ShapeMismatch(f"expected {self.rim.edge_count} edge values, got {vals.shape}")
        if len(vals) and (vals.min() < 0 or vals.max() >= self.field.modulus):
            raise ShapeMismatch("values must be canonical field elements")
        self.values = vals

    @classmethod
    def zeros(cls, rim: RIM, fld: PrimeField) -> "EdgeWord":
        return cls(rim, fld, np.zeros(rim.edge_count, dtype=np.int64))

    def value(self, v: int, j: int) -> int:
        return int(self.values[self.rim.edge(v, j)])

    def local_view(self, v: int) -> np.ndarray:
        n = self.rim.arity
        return self.values[self.rim.edge_of[v * n : (v + 1) * n]]

    def local_views(self) -> np.ndarray:
        return self.values[self.rim.edge_of.reshape(self.rim.vertex_count, self.rim.arity)]

    def __add__(self, other: "EdgeWord") -> "EdgeWord":
        _same_shape(self, other)
        return EdgeWord(self.rim, self.field, (self.values + other.values) % self.field.modulus)

    def __sub__(self, other: "EdgeWord") -> "EdgeWord":
        _same_shape(self, other)
        return EdgeWord(self.rim, self.field, (self.values - other.values) % self.field.modulus)

    def scale(self, c: int) -> "EdgeWord":
        p = self.field.modulus
        return EdgeWord(self.rim, self.field, mul_mod(self.values, c % p, p))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EdgeWord)
            and self.field == other.field
            and self.rim.same_structure(other.rim)
            and np.array_equal(self.values, other.values)
        )

    def to_bytes(self) -> bytes:
        return b"".join(self.field.to_bytes(int(x)) for x in self.values)


def _same_shape(f: EdgeWord, g: EdgeWord):
    if f.field != g.field or not f.rim.same_structure(g.rim):
        raise ShapeMismatch("words live on different graphs or fields")


def cut_word(f: EdgeWord, subset: Iterable[int]) -> EdgeWord:
    s = _subset_array(f.rim, subset)
    sub = cut_graph(f.rim, s)
    n = f.rim.arity
    parent_h = (s[:, None] * n + np.arange(n)).reshape(-1)
    reps = sub.edge_representatives
    return EdgeWord(sub, f.field, f.values[f.rim.edge_of[parent_h[reps]]])


def differing_vertices(f: EdgeWord, g: EdgeWord) -> np.ndarray:
    _same_shape(f, g)
    return np.any(f.local_views() != g.local_views(), axis=1)


def hamming_distance(f: EdgeWord, g: EdgeWord) -> Fraction:
    _same_shape(f, g)
    return Fraction(int(np.count_nonzero(f.values != g.values)), f.rim.edge_count)


def vertex_distance(f: EdgeWord, g: EdgeWord) -> Fraction:
    return Fraction(int(differing_vertices(f, g).sum()), f.rim.vertex_count)


# -- weights -------------------------------------------------------------------
@dataclass(frozen=True)
class WeightFn:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be strictly positive")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def uniform(cls, vertex_count: int) -> "WeightFn":
        return cls((Fraction(1),) * vertex_count)

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, v: int) -> Fraction:
        return self.weights[v]

    def mass(self, vertices: Iterable[int] | None = None) -> Fraction:
        if vertices is None:
            return sum(self.weights, Fraction(0))
        return sum((self.weights[int(v)] for v in vertices), Fraction(0))

    def relative_mass(self, mask: np.ndarray) -> Fraction:
        return self.mass(np.nonzero(mask)[0]) / self.mass()


def weighted_vertex_distance(f: EdgeWord, g: EdgeWord, w: WeightFn) -> Fraction:
    if len(w) != f.rim.vertex_count:
        raise ShapeMismatch("weight function does not match the graph")
    return w.relative_mass(differing_vertices(f, g))


def mu_lower_bound(g: RIM) -> Fraction:
    """Certified constant with Delta_V >= mu * Delta_H.

    Each differing edge is charged to its endpoints (half to each end of an
    ordinary edge, fully to a petal), so |D| <= sum over differing v of
    (n + c(v))/2 while |E| = sum over all v of (n + c(v))/2.
    """
    load = g.arity + g.petals_per_vertex
    return Fraction(int(load.sum()), g.vertex_count * int(load.max()))


# -- cut collections -----------------------------------------------------------
@dataclass
class CutCollection:
    """Cuts V_0..V_{m-1} of ``parent`` with isomorphisms phi_i: cut(V_0) -> cut(V_i).

    ``subsets[i]`` holds sorted parent vertex ids; ``isomorphisms[i][v]`` is the
    parent id of phi_i applied to the v-th vertex of the V_0 cut.
    """

    parent: RIM
    subsets: list[np.ndarray]
    isomorphisms: list[np.ndarray]
    multiplicity: np.ndarray = field(init=False)
    child: RIM = field(init=False)

    def __post_init__(self):
        self.subsets = [_subset_array(self.parent, s) for s in self.subsets]
        self.isomorphisms = [np.asarray(phi, dtype=np.int64) for phi in self.isomorphisms]
        if len(self.subsets) != len(self.isomorphisms) or len(self.subsets) < 1:
            raise RIMError("one isomorphism per cut")
        mult = np.zeros(self.parent.vertex_count, dtype=np.int64)
        for s in self.subsets:
            mult[s] += 1
        self.multiplicity = mult
        self.child = cut_graph(self.parent, self.subsets[0])

    @property
    def order(self) -> int:
        return len(self.subsets)

    def cut(self, i: int) -> RIM:
        return cut_graph(self.parent, self.subsets[i])

    def local_isomorphism(self, i: int) -> np.ndarray:
        """phi_i as a map from V_0-cut ids to V_i-cut ids."""
        return np.searchsorted(self.subsets[i], self.isomorphisms[i])

    def validate(self) -> None:
        if np.any(self.multiplicity == 0):
            raise RIMError("cuts do not cover the parent vertex set")
        v0 = self.subsets[0]
        for i in range(self.order):
            phi = self.isomorphisms[i]
            if len(phi) != len(v0) or not np.array_equal(np.sort(phi), self.subsets[i]):
                raise RIMError(f"phi_{i} is not a bijection onto V_{i}")
            cut_i = self.cut(i)
            loc = self.local_isomorphism(i)
            if not check_isomorphism(self.child, cut_i, loc):
                raise RIMError(f"phi_{i} is not a RIM isomorphism")
            if not preserves_pairing(self.child, cut_i, loc):
                raise RIMError(f"phi_{i} does not preserve the half-edge pairing")
            if not np.array_equal(self.multiplicity[v0], self.multiplicity[phi]):
                raise RIMError(f"multiplicity is not invariant under phi_{i}")


def refine_weights(w: WeightFn, c: CutCollection) -> WeightFn:
    """w'(v) = w(v)/#v on the V_0 cut, indexed by its local vertex ids."""
    v0 = c.subsets[0]
    return WeightFn(tuple(w[int(v)] / int(c.multiplicity[v]) for v in v0))


# -- traversal -------------------------------------------------------------------
def bfs_distances(g: RIM, source: int) -> np.ndarray:
    dist = np.full(g.vertex_count, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    nb = g.neighbor
    while queue:
        v = queue.popleft()
        for u in nb[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(int(u))
    return dist


def graph_diameter(g: RIM) -> int:
    """Exact diameter from all-pairs breadth-first search."""
    if g.vertex_count == 1:
        return 0
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    V = g.vertex_count
    rows = np.repeat(np.arange(V), g.arity)
    adj = csr_matrix((np.ones(V * g.arity), (rows, g.neighbor.reshape(-1))), shape=(V, V))
    dist = shortest_path(adj, directed=False, unweighted=True)
    if np.isinf(dist).any():
        raise Disconnected("graph is not connected")
    return int(dist.max())


# -- text format ------------------------------------------------------------------
def dumps_rim(g: RIM) -> str:
    n = g.arity
    lines = [f"rim {g.vertex_count} {n}"]
    for v in range(g.vertex_count):
        parts = [str(v)]
        for j in range(n):
            pv, pj = divmod(int(g.partner[v * n + j]), n)
            parts += [str(int(g.neighbor[v, j])), str(pv), str(pj)]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def loads_rim(text: str) -> RIM:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise RIMError("empty graph file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "rim":
        raise RIMError("graph file must start with 'rim <|V|> <n>'")
    V, n = int(head[1]), int(head[2])
    if len(lines) - 1 != V:
        raise RIMError(f"expected {V} vertex lines, got {len(lines) - 1}")
    nb = np.empty((V, n), dtype=np.int64)
    partner = np.empty(V * n, dtype=np.int64)
    for line in lines[1:]:
        tok = [int(x) for x in line.split()]
        if len(tok) != 1 + 3 * n:
            raise RIMError(f"malformed vertex line: {line!r}")
        v = tok[0]
        for j in range(n):
            t, pv, pj = tok[1 + 3 * j : 4 + 3 * j]
            nb[v, j] = t
            partner[v * n + j] = pv * n + pj
    return RIM(n, nb, partner)


def dumps_word(f: EdgeWord) -> bytes:
    return f"word {f.rim.edge_count} {f.field.modulus}\n".encode() + f.to_bytes()


def loads_word(data: bytes, rim: RIM) -> EdgeWord:
    head, _, body = data.partition(b"\n")
    tok = head.decode(errors="replace").split()
    if len(tok) != 3 or tok[0] != "word":
        raise ShapeMismatch("word file must start with 'word <edge_count> <modulus>'")
    count, modulus = int(tok[1]), int(tok[2])
    fld = PrimeField(modulus)
    if count != rim.edge_count or len(body) != count * fld.byte_len:
        raise ShapeMismatch("word size does not match the graph")
    b = fld.byte_len
    vals = [fld.from_bytes(body[i * b : (i + 1) * b]) for i in range(count)]
    return EdgeWord(rim, fld, np.array(vals, dtype=np.int64))
