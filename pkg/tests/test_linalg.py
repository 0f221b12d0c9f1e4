import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from flowering.linalg import echelon, matmul_mod, mul_mod, rank_mod


def _rank_oracle(rows, p):
    """Plain-Python elimination on lists of ints."""
    m = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] % p:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


@settings(max_examples=60)
@given(
    st.integers(1, 6),
    st.integers(1, 7),
    st.sampled_from([2, 3, 7, 101]),
    st.randoms(use_true_random=False),
)
def test_rank_and_kernel(nrows, ncols, p, rnd):
    a = np.array([[rnd.randrange(p) for _ in range(ncols)] for _ in range(nrows)], dtype=np.int64)
    e = echelon(a, p)
    assert e.rank == _rank_oracle(a.tolist(), p)
    K = e.kernel_basis()
    assert K.shape == (ncols - e.rank, ncols)
    assert not np.any(matmul_mod(a, K.T, p))
    if len(K):
        assert rank_mod(K, p) == len(K)


def test_matmul_mod_large_values():
    p = 2**31 - 1
    rnd = np.random.default_rng(0)
    a = rnd.integers(0, p, size=(5, 40000))
    b = rnd.integers(0, p, size=(40000, 3))
    got = matmul_mod(a, b, p)
    want = (a.astype(object) @ b.astype(object)) % p
    assert np.array_equal(got.astype(object), want)


def test_mul_mod_beyond_int64_products():
    p = 2**61 - 1
    a = np.array([p - 1, 2**40, 3], dtype=np.int64)
    b = np.array([p - 1, 2**40, 5], dtype=np.int64)
    assert mul_mod(a, b, p).tolist() == [1, pow(2, 80, p), 15]
