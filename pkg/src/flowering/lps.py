"""LPS Ramanujan Cayley graphs on PGL_2(F_q) / PSL_2(F_q).

Elements are 2x2 invertible matrices over F_q modulo scalars, stored as the
row-major 4-tuple scaled so that its first nonzero entry is 1.  PSL_2 is the
index-2 subgroup of classes whose determinant is a square.
"""

from __future__ import annotations

import math

from .cayley import CayleyGraph, FiniteGroup, GeneratorSet, build_cayley
from .field import is_probable_prime


class LPSError(ValueError):
    pass


class BadCongruence(LPSError):
    pass


class TooFewSolutions(RuntimeError):
    pass


class SingularMatrix(ValueError):
    pass


def legendre(a: int, q: int) -> int:
    a %= q
    if a == 0:
        return 0
    return 1 if pow(a, (q - 1) // 2, q) == 1 else -1


def sqrt_minus_one(q: int) -> int:
    for g in range(2, q):
        if legendre(g, q) == -1:
            return pow(g, (q - 1) // 4, q)
    raise BadCongruence(f"no square root of -1 mod {q}")


def projective_canonicalize(m, q: int) -> tuple[int, int, int, int]:
    a, b, c, d = (int(x) % q for x in (m if len(m) == 4 else (*m[0], *m[1])))
    if (a * d - b * c) % q == 0:
        raise SingularMatrix("matrix is not invertible")
    lead = next(x for x in (a, b, c, d) if x)
    s = pow(lead, q - 2, q)
    return (a * s % q, b * s % q, c * s % q, d * s % q)


class ProjectiveLinearGroup(FiniteGroup):
    def __init__(self, q: int, special: bool = False):
        if not is_probable_prime(q) or q < 3:
            raise LPSError(f"q={q} must be an odd prime")
        self.q = q
        self.special = special
        self.name = f"{'PSL' if special else 'PGL'}2(F_{q})"
        self.identity = (1, 0, 0, 1)
        self._width = max(1, ((q - 1).bit_length() + 7) // 8)

    def mul(self, x, y):
        q = self.q
        a, b, c, d = x
        e, f, g, h = y
        return projective_canonicalize((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h), q)

    def inv(self, x):
        a, b, c, d = x
        return projective_canonicalize((d, -b, -c, a), self.q)

    def encode(self, x) -> bytes:
        return b"".join(v.to_bytes(self._width, "little") for v in x)

    def det_is_square(self, x) -> bool:
        a, b, c, d = x
        return legendre(a * d - b * c, self.q) == 1

    def elements(self) -> list:
        q = self.q
        out = []
        # first nonzero entry 1: either a = 1, or a = 0 and b = 1
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    if (d - b * c) % q:
                        out.append((1, b, c, d))
        for c in range(q):
            for d in range(q):
                if c:
                    out.append((0, 1, c, d))
        if self.special:
            out = [x for x in out if self.det_is_square(x)]
        return out

    def order(self) -> int:
        q = self.q
        return (q - 1) * q * (q + 1) // (2 if self.special else 1)

    def describe(self) -> dict[str, str]:
        return {"group": "PSL2" if self.special else "PGL2", "q": str(self.q)}


def quaternion_solutions(p: int) -> list[tuple[int, int, int, int]]:
    """(a0, a1, a2, a3) with a0^2+a1^2+a2^2+a3^2 = p, a0 > 0 odd, a1, a2, a3 even."""
    r = math.isqrt(p)
    sols = []
    for a0 in range(1, r + 1, 2):
        for a1 in range(-r, r + 1):
            for a2 in range(-r, r + 1):
                for a3 in range(-r, r + 1):
                    if a1 % 2 or a2 % 2 or a3 % 2:
                        continue
                    if a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p:
                        sols.append((a0, a1, a2, a3))
    return sols


def lps_generators(p: int, q: int) -> tuple[ProjectiveLinearGroup, GeneratorSet]:
    if not (is_probable_prime(p) and is_probable_prime(q)):
        raise BadCongruence("p and q must be prime")
    if p % 4 != 1 or q % 4 != 1:
        raise BadCongruence("p and q must be 1 mod 4")
    if p == q:
        raise BadCongruence("p and q must differ")
    if q * q <= 4 * p:
        raise BadCongruence("need q > 2 sqrt(p)")
    sols = quaternion_solutions(p)
    if len(sols) != p + 1:
        raise TooFewSolutions(f"found {len(sols)} quaternions of norm {p}, expected {p + 1}")
    i = sqrt_minus_one(q)
    group = ProjectiveLinearGroup(q, special=legendre(p, q) == 1)

    def matrix(a0, a1, a2, a3):
        return projective_canonicalize((a0 + a1 * i, a2 + a3 * i, -a2 + a3 * i, a0 - a1 * i), q)

    # one representative per conjugate pair: first nonzero of (a1, a2, a3) positive
    base = []
    for a in sorted(sols):
        first = next(x for x in a[1:] if x)
        if first > 0:
            base.append(matrix(*a))
    gens = GeneratorSet(group, base)
    full = {matrix(*a) for a in sols}
    if set(gens.symmetric) != full or len(full) != p + 1:
        raise TooFewSolutions("quaternion matrices do not form a symmetric set of size p+1")
    return group, gens


def lps_graph(p: int, q: int) -> tuple[ProjectiveLinearGroup, GeneratorSet, CayleyGraph]:
    group, gens = lps_generators(p, q)
    return group, gens, build_cayley(group, gens)
