"""Reed-Solomon base code and the graph code C(G, k).

RS[n, k] is evaluated at the field elements 0..n-1.  Membership uses the
dual generalized RS code: rows u_i x_i^t for t < n-k with
u_i = 1 / prod_{j != i} (x_i - x_j).  Interpolation-based oracles are kept
alongside so the two routes can be checked against each other.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .field import PrimeField
from .linalg import Echelon, _dtype, echelon, matmul_mod
from .rim import RIM, EdgeWord, ShapeMismatch, WeightFn

RS_DISTANCE_MAX_N = 16
DENSE_EDGE_LIMIT = 20_000
DEFAULT_BUDGET = 10**7


class CodeError(ValueError):
    pass


class LengthMismatch(CodeError):
    pass


class TooLarge(CodeError):
    pass


class _Unknown:
    """Result of an oracle that ran out of budget or has nothing to minimize."""

    def __repr__(self) -> str:
        return "Unknown"

    def __bool__(self) -> bool:
        return False


UNKNOWN = _Unknown()


# -- Reed-Solomon ----------------------------------------------------------------
@dataclass(frozen=True)
class RSCode:
    field: PrimeField
    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise CodeError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.n > self.field.modulus:
            raise CodeError("not enough distinct evaluation points in the field")

    @property
    def points(self) -> list[int]:
        return list(range(self.n))

    @cached_property
    def parity_matrix(self) -> np.ndarray:
        """(n-k) x n matrix H with H c = 0 exactly for codewords c."""
        p, n = self.field.modulus, self.n
        xs = self.points
        u = []
        for i in range(n):
            prod = 1
            for j in range(n):
                if j != i:
                    prod = prod * (xs[i] - xs[j]) % p
            u.append(pow(prod, p - 2, p))
        rows = [[u[i] * pow(xs[i], t, p) % p for i in range(n)] for t in range(n - self.k)]
        return np.array(rows, dtype=np.int64).reshape(n - self.k, n)

    def encode(self, coeffs) -> np.ndarray:
        """Evaluations of the polynomial with the given low-to-high coefficients."""
        if len(coeffs) > self.k:
            raise LengthMismatch(f"at most {self.k} coefficients")
        p = self.field.modulus
        return np.array([_horner(coeffs, x, p) for x in self.points], dtype=np.int64)

    def syndromes(self, views: np.ndarray) -> np.ndarray:
        """Parity checks of each row of ``views`` (shape (..., n))."""
        views = np.asarray(views)
        if views.shape[-1] != self.n:
            raise LengthMismatch(f"expected length {self.n}")
        if self.k == self.n:
            return np.zeros(views.shape[:-1] + (0,), dtype=np.int64)
        return matmul_mod(views, self.parity_matrix.T, self.field.modulus)


def _horner(coeffs, x: int, p: int) -> int:
    acc = 0
    for c in reversed(list(coeffs)):
        acc = (acc * x + int(c)) % p
    return acc


def interpolate(xs, ys, p: int) -> list[int]:
    """Coefficients (low to high) of the least-degree polynomial through the points."""
    n = len(xs)
    coeffs = [0] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (X - x_j) / (x_i - x_j)
        num = [1]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            num = [(a - xs[j] * b) % p for a, b in zip([0] + num, num + [0])]
            denom = denom * (xs[i] - xs[j]) % p
        scale = int(ys[i]) * pow(denom, p - 2, p) % p
        for d in range(n):
            coeffs[d] = (coeffs[d] + scale * num[d]) % p
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_degree(coeffs) -> int:
    """Degree with the zero polynomial at -1."""
    for d in range(len(coeffs) - 1, -1, -1):
        if coeffs[d]:
            return d
    return -1


def rs_is_member(v, code: RSCode) -> bool:
    v = np.asarray([int(x) % code.field.modulus for x in v], dtype=np.int64)
    if len(v) != code.n:
        raise LengthMismatch(f"expected length {code.n}, got {len(v)}")
    return not np.any(code.syndromes(v))


def rs_is_member_interpolation(v, code: RSCode) -> bool:
    """Oracle: interpolate through all n points and read off the degree."""
    if len(v) != code.n:
        raise LengthMismatch(f"expected length {code.n}, got {len(v)}")
    return poly_degree(interpolate(code.points, list(v), code.field.modulus)) < code.k


def rs_distance(v, code: RSCode) -> int:
    """Exact distance to RS[n,k] by interpolating every k-subset of positions."""
    if len(v) != code.n:
        raise LengthMismatch(f"expected length {code.n}, got {len(v)}")
    if code.n > RS_DISTANCE_MAX_N:
        raise TooLarge(f"subset oracle limited to n <= {RS_DISTANCE_MAX_N}")
    p = code.field.modulus
    xs = code.points
    v = [int(x) % p for x in v]
    best = 0
    for subset in itertools.combinations(range(code.n), code.k):
        poly = interpolate([xs[i] for i in subset], [v[i] for i in subset], p)
        agree = sum(_horner(poly, xs[i], p) == v[i] for i in range(code.n))
        best = max(best, agree)
        if best == code.n:
            break
    return code.n - best


# -- graph code ------------------------------------------------------------------
@dataclass
class GraphCode:
    """C(G, k): words on the edges of G whose every local view lies in RS[n, k]."""

    graph: RIM
    base: RSCode
    _echelon: Echelon | None = field(default=None, init=False, repr=False)
    _basis: np.ndarray | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.graph.arity != self.base.n:
            raise ShapeMismatch(f"graph arity {self.graph.arity} != code length {self.base.n}")

    @property
    def field(self) -> PrimeField:
        return self.base.field

    @property
    def k(self) -> int:
        return self.base.k

    def parity_system(self) -> np.ndarray:
        """Stacked per-vertex parity rows on the edge variables, (|V|(n-k)) x |E|.

        A loop whose two half-edges sit at the same vertex gets both
        coefficients added onto its single edge variable.
        """
        g, code = self.graph, self.base
        r = code.n - code.k
        p = code.field.modulus
        nv, n = g.vertex_count, g.arity
        sys_ = np.zeros((nv * r, g.edge_count), dtype=_dtype(p))
        if r == 0:
            return sys_
        H = code.parity_matrix
        cols = g.edge_of.reshape(nv, n)
        for t in range(r):
            rows = np.arange(nv) * r + t
            for j in range(n):
                np.add.at(sys_, (rows, cols[:, j]), H[t, j])
        return sys_ % p

    def echelon(self) -> Echelon:
        if self._echelon is None:
            if self.graph.edge_count > DENSE_EDGE_LIMIT:
                raise TooLarge(f"dense elimination limited to {DENSE_EDGE_LIMIT} edges")
            self._echelon = echelon(self.parity_system(), self.field.modulus)
        return self._echelon

    @property
    def dimension(self) -> int:
        e = self.echelon()
        return e.ncols - e.rank

    def basis(self) -> np.ndarray:
        """Basis of C(G,k), one codeword per row."""
        if self._basis is None:
            self._basis = self.echelon().kernel_basis()
        return self._basis

    def basis_words(self) -> list[EdgeWord]:
        return [EdgeWord(self.graph, self.field, row) for row in self.basis()]

    def sample_codeword(self, source: random.Random) -> EdgeWord:
        """Uniform codeword: random free variables, pivots by back substitution."""
        return self.sample_codewords(source, 1)[0]

    def sample_codewords(self, source: random.Random, count: int) -> list[EdgeWord]:
        e = self.echelon()
        fld = self.field
        free = np.array(
            [[fld.sample(source) for _ in range(count)] for _ in e.free], dtype=_dtype(fld.modulus)
        ).reshape(len(e.free), count)
        x = e.solve_pivots(free)
        return [EdgeWord(self.graph, fld, x[:, i]) for i in range(count)]

    def codeword_from_free(self, values) -> EdgeWord:
        x = self.echelon().solve_pivots(np.asarray(values).reshape(-1, 1))
        return EdgeWord(self.graph, self.field, x[:, 0])


def invalid_vertices(f: EdgeWord, code: RSCode) -> np.ndarray:
    """Boolean mask of vertices whose local view is not an RS codeword."""
    if f.rim.arity != code.n:
        raise ShapeMismatch("word arity does not match the code length")
    return np.any(code.syndromes(f.local_views()) != 0, axis=1)


def graph_membership(f: EdgeWord, gc: GraphCode) -> bool:
    if not f.rim.same_structure(gc.graph) or f.field != gc.field:
        raise ShapeMismatch("word does not live on the code's graph")
    return not invalid_vertices(f, gc.base).any()


def invalid_fraction(f: EdgeWord, code: RSCode, w: WeightFn | None = None) -> Fraction:
    """Weighted fraction of invalid vertices: the distance-to-code used by the analysis."""
    mask = invalid_vertices(f, code)
    if w is None:
        return Fraction(int(mask.sum()), f.rim.vertex_count)
    if len(w) != f.rim.vertex_count:
        raise ShapeMismatch("weight function does not match the graph")
    return w.relative_mass(mask)


def dimension_lower_bound(g: RIM, k: int) -> Fraction:
    """(k - n/2)|V| + |P|/2."""
    return (k - Fraction(g.arity, 2)) * g.vertex_count + Fraction(g.petal_count, 2)


def min_distance_bruteforce(gc: GraphCode, budget: int = DEFAULT_BUDGET):
    """Minimum Hamming weight (edge count) of a nonzero codeword, or UNKNOWN.

    Only one coefficient vector per projective point is tried (the weight is
    invariant under scaling), i.e. (|F|^dim - 1)/(|F| - 1) words.
    """
    dim = gc.dimension
    p = gc.field.modulus
    if dim == 0 or p**dim > budget:
        return UNKNOWN
    B = gc.basis()
    best = gc.graph.edge_count
    for lead in range(dim):
        rest = dim - lead - 1
        total = p**rest
        chunk = max(1, 1 << 14)
        for lo in range(0, total, chunk):
            idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
            coeffs = np.zeros((len(idx), dim), dtype=np.int64)
            coeffs[:, lead] = 1
            for c in range(rest):
                coeffs[:, dim - 1 - c] = (idx // p**c) % p
            words = matmul_mod(coeffs, B, p)
            best = min(best, int(np.count_nonzero(words, axis=1).min()))
    return best


def corrupt_edges(f: EdgeWord, count: int, source: random.Random) -> EdgeWord:
    """Add a random nonzero value on ``count`` distinct random edges."""
    if not 0 <= count <= f.rim.edge_count:
        raise ValueError("corruption count out of range")
    p = f.field.modulus
    vals = f.values.copy()
    for e in source.sample(range(f.rim.edge_count), count):
        vals[e] = (int(vals[e]) + source.randrange(1, p)) % p
    return EdgeWord(f.rim, f.field, vals)
