"""Exact linear algebra over F_p on numpy arrays.

Moduli below 2^31 run on int64 (a product of two residues fits in 63 bits).
Larger moduli fall back to object arrays of Python ints, which is exact but
slow, so keep those to small matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

INT64_SAFE = 1 << 31
_LIMB = 16


def _dtype(p: int):
    return np.int64 if p < INT64_SAFE else object


def as_mod_array(values, p: int) -> np.ndarray:
    arr = np.array(values, dtype=object) % p
    return arr.astype(_dtype(p))


def mul_mod(a, b, p: int) -> np.ndarray:
    """Elementwise (a * b) mod p, exact for every modulus below 2^62."""
    if p < INT64_SAFE:
        return (np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % p
    out = (np.asarray(a, dtype=object) * np.asarray(b, dtype=object)) % p
    return out.astype(np.int64)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p without int64 overflow."""
    if p >= INT64_SAFE:
        return (a.astype(object) @ b.astype(object)) % p
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1]
    step = 1 << 15  # keeps each partial sum below 2^62
    out = None
    for lo in range(0, max(inner, 1), step):
        ac = a[..., lo : lo + step]
        bc = b[lo : lo + step]
        b_lo = bc & ((1 << _LIMB) - 1)
        b_hi = bc >> _LIMB
        part = (ac @ b_lo) % p + (((ac @ b_hi) % p) << _LIMB) % p
        out = part % p if out is None else (out + part) % p
    return out


@dataclass
class Echelon:
    """Row echelon form with unit pivots; rows beyond the rank are dropped."""

    rows: np.ndarray
    pivots: list[int]
    ncols: int
    modulus: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def free(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ncols) if c not in piv]

    def solve_pivots(self, xfree: np.ndarray) -> np.ndarray:
        """Full kernel vectors (columns) for the given free-variable columns."""
        p = self.modulus
        free = self.free
        xfree = np.asarray(xfree, dtype=_dtype(p)).reshape(len(free), -1)
        x = np.zeros((self.ncols, xfree.shape[1]), dtype=_dtype(p))
        x[free] = xfree
        # back substitution, bottom row first; each pivot row reads only later columns
        for i in range(self.rank - 1, -1, -1):
            c = self.pivots[i]
            row = self.rows[i, c + 1 :]
            nz = np.nonzero(row)[0]
            if len(nz):
                acc = matmul_mod(row[nz][None, :], x[c + 1 + nz], p)[0]
                x[c] = (-acc) % p
        return x

    def kernel_basis(self) -> np.ndarray:
        """Basis of the right kernel, one vector per row."""
        d = self.ncols - self.rank
        if d == 0:
            return np.zeros((0, self.ncols), dtype=_dtype(self.modulus))
        eye = np.eye(d, dtype=_dtype(self.modulus))
        return self.solve_pivots(eye).T.copy()


def echelon(matrix: np.ndarray, p: int) -> Echelon:
    a = np.array(matrix, dtype=_dtype(p)) % p
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = r + 1 + np.nonzero(a[r + 1 :, c])[0]
        if len(below):
            factors = a[below, c][:, None]
            a[below, c:] = (a[below, c:] - (factors * a[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return Echelon(a[:r].copy(), pivots, ncols, p)


def rank_mod(matrix: np.ndarray, p: int) -> int:
    return echelon(matrix, p).rank
