"""Vectorized linear algebra over F_p for the exhaustive scans.

Fields of order p^D are F_p-vector spaces; every F_q-linear map (Frobenius,
scalar multiplication, any linearized operator) is also F_p-linear and so
becomes a D x D integer matrix mod p.  Whole-field scans then reduce to
matrix products and a batched Gaussian elimination, which is what makes
enumerating 2^20 elements practical in pure Python + numpy.
"""

from __future__ import annotations

import numpy as np


def linear_map_matrix(func, ext) -> np.ndarray:
    """Matrix over F_p of an F_p-linear map on ext, from a plain callable.

    Column j is the prime-coordinate image of the j-th unit vector, so the
    matrix is exact by construction whenever func is linear."""
    dim = ext.prime_dim
    cols = []
    for j in range(dim):
        unit = [0] * dim
        unit[j] = 1
        e = ext.from_prime_coords(tuple(unit))
        cols.append(ext.prime_coords(func(e)))
    return (np.array(cols, dtype=np.int64).T % ext.char).astype(np.uint8)


def frobenius_matrix(ext) -> np.ndarray:
    return linear_map_matrix(ext.frobenius, ext)


def scalar_mult_matrices(ext) -> list[np.ndarray]:
    """Matrices of multiplication by each F_p-basis scalar of ext's base
    field.  For a prime base this is just [identity]."""
    base = ext.base
    mats = []
    for t in range(base.prime_dim):
        unit = [0] * base.prime_dim
        unit[t] = 1
        s = ext.embed(base.from_prime_coords(tuple(unit)))
        mats.append(linear_map_matrix(lambda a: ext.mul(a, s), ext))
    return mats


def apply_map(vectors: np.ndarray, mat: np.ndarray, p: int) -> np.ndarray:
    """(N, D) coordinate rows through a (D, D) map, reduced mod p."""
    prod = vectors.astype(np.int32) @ mat.T.astype(np.int32)
    return (prod % p).astype(np.uint8)


def all_vectors(p: int, dim: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Base-p digit rows for indices [start, stop), most significant digit
    first.  Row i equals prime_coords(from_index(start + i)) of a field of
    order p^dim, so numpy scans walk elements in the canonical order."""
    if stop is None:
        stop = p**dim
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(idx), dim), dtype=np.uint8)
    for j in range(dim):
        out[:, j] = (idx // p ** (dim - 1 - j)) % p
    return out


def inverse_table(p: int) -> np.ndarray:
    return np.array([0] + [pow(i, -1, p) for i in range(1, p)], dtype=np.int16)


def _batched_rank_full_gf2(mats: np.ndarray) -> np.ndarray:
    """Rank-fullness over F_2 with rows packed into machine words: the
    elimination step becomes one masked XOR per column."""
    nbatch, m, _ = mats.shape
    work = np.zeros((nbatch, m), dtype=np.uint32)
    for j in range(m):
        work |= (mats[:, :, j].astype(np.uint32) & np.uint32(1)) << np.uint32(j)
    ok = np.ones(nbatch, dtype=bool)
    bidx = np.arange(nbatch)
    for c in range(m):
        bits = (work[:, c:] >> np.uint32(c)) & np.uint32(1)
        ok &= bits.any(axis=1)
        piv = c + np.argmax(bits, axis=1)
        row_c = work[bidx, c].copy()
        row_p = work[bidx, piv].copy()
        work[bidx, c] = row_p
        work[bidx, piv] = row_c
        if c + 1 < m:
            sel = ((work[:, c + 1 :] >> np.uint32(c)) & np.uint32(1)).astype(bool)
            work[:, c + 1 :] ^= np.where(sel, work[:, c, None], np.uint32(0))
    return ok


def batched_rank_full(mats: np.ndarray, p: int) -> np.ndarray:
    """For a (B, m, m) batch of matrices over F_p, whether each has rank m.

    Plain Gaussian elimination run across the whole batch at once; the pivot
    for every batch member is the first nonzero entry in the current column
    (deterministic, and batch members that go singular are masked out via
    the returned flags rather than aborting the elimination)."""
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError("expected a (B, m, m) batch")
    if p == 2 and mats.shape[1] <= 32:
        return _batched_rank_full_gf2(mats % 2)
    work = (mats.astype(np.int16)) % p
    nbatch, m, _ = work.shape
    ok = np.ones(nbatch, dtype=bool)
    inv = inverse_table(p)
    bidx = np.arange(nbatch)
    for c in range(m):
        col = work[:, c:, c]
        nz = col != 0
        ok &= nz.any(axis=1)
        piv = c + np.argmax(nz, axis=1)
        row_c = work[bidx, c, :].copy()
        row_p = work[bidx, piv, :].copy()
        work[bidx, c, :] = row_p
        work[bidx, piv, :] = row_c
        work[:, c, :] = work[:, c, :] * inv[work[:, c, c]][:, None] % p
        if c + 1 < m:
            fac = work[:, c + 1 :, c]
            work[:, c + 1 :, :] -= fac[:, :, None] * work[:, c, None, :]
            work[:, c + 1 :, :] %= p
    return ok
