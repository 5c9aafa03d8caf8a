"""Exact nullspaces over Q and F_p.

Prime fields use vectorised row reduction on int64 arrays; with p < 2^31
every product of two residues fits in 63 bits. Over Q the matrix is first
reduced modulo a large prime: full column rank there certifies full column
rank over Q, so the expensive rational elimination only runs when a kernel
may exist.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .field import Field, Scalar

_CERT_PRIMES = (2147483647, 2147483629, 2147483587)


def rref_mod_p(M: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of an integer matrix over F_p."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(M: np.ndarray, p: int) -> int:
    """Rank over F_p by forward elimination only."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        below = A[r + 1:, c]
        hit = np.flatnonzero(below) + r + 1
        if hit.size:
            A[hit, c:] = (A[hit, c:] - np.outer(A[hit, c], A[r, c:])) % p
        r += 1
    return r


def rref_rational(rows: Sequence[Sequence[Scalar]], ncols: int):
    """Reduced row echelon form over Q with Fraction arithmetic."""
    A = [[Fraction(v) for v in row] for row in rows]
    pivots: List[int] = []
    r = 0
    nrows = len(A)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        pr = A[r]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], pr)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _to_mod_p(rows, p) -> Optional[np.ndarray]:
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if isinstance(v, Fraction):
                d = v.denominator % p
                if d == 0:
                    return None
                out[i, j] = v.numerator * pow(d, -1, p) % p
            else:
                out[i, j] = v % p
    return out


_SLACK = 16


def compress_mod_p(A: np.ndarray, p: int) -> Optional[np.ndarray]:
    """R @ A mod p for a fixed pseudorandom R with ncols + 16 rows.

    rank(R A) <= rank(A) and ker(A) is inside ker(R A), so full column rank
    of the product certifies it for A, and a kernel vector of the product
    that A also kills is a genuine kernel vector. Returns None when the
    matrix is not tall enough to gain anything or the float64 product could
    be inexact.
    """
    rows, cols = A.shape
    if rows <= cols + 2 * _SLACK or float(p) * p * rows >= 2.0 ** 52:
        return None
    gen = np.random.Generator(np.random.Philox(rows * 1000003 + cols))
    R = gen.integers(0, p, size=(cols + _SLACK, rows)).astype(np.float64)
    return (np.remainder(R @ A.astype(np.float64), p)).astype(np.int64)


def _mod_p_matrix(rows, p) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        return rows.astype(np.int64) % p
    return np.array(rows, dtype=np.int64) % p


def full_column_rank_certified(rows, ncols: int, field: Field) -> bool:
    """True only if the matrix provably has trivial kernel."""
    if ncols == 0:
        return True
    if len(rows) == 0:
        return False
    if field.is_prime_field:
        A = _mod_p_matrix(rows, field.p)
        C = compress_mod_p(A, field.p)
        if C is None:
            return rank_mod_p(A, field.p) == ncols
        verdict = _compressed_verdict(A, C, field.p)
        if verdict is not None:
            return verdict[1] == []
        return rank_mod_p(A, field.p) == ncols
    for q in _CERT_PRIMES:
        A = _to_mod_p(rows, q)
        if A is None:
            continue
        if rank_mod_p(A, q) == ncols:
            return True
    return False


def kernel_basis(rows, ncols: int, field: Field) -> List[List[Scalar]]:
    """Canonical kernel basis: one vector per free column of the RREF.

    The vector for free column ``f`` has a 1 in position ``f``, zeros in
    the other free positions, and is determined on pivot positions.
    """
    if ncols == 0:
        return []
    if len(rows) == 0:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    if field.is_prime_field:
        A = _mod_p_matrix(rows, field.p)
        R, piv = _rref_mod_p_checked(A, field.p)
    else:
        if full_column_rank_certified(rows, ncols, field):
            return []
        R, piv = rref_rational(rows, ncols)
    return _basis_from_rref(R, piv, ncols, field)


def _basis_from_rref(R, piv, ncols, field):
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(piv):
            v[c] = field.norm(-R[r][f])
        basis.append(v)
    return basis


def _compressed_verdict(A: np.ndarray, C: np.ndarray, p: int):
    """(RREF, pivots, free columns) of C when ker C = ker A is proven, else None.

    Equal kernels mean equal row spaces and hence the same reduced form.
    """
    R, piv = rref_mod_p(C, p)
    pivset = set(piv)
    free = [f for f in range(A.shape[1]) if f not in pivset]
    if free:
        # the kernel vectors of C, one per free column, must be killed by A
        K = np.zeros((A.shape[1], len(free)), dtype=np.int64)
        for j, f in enumerate(free):
            K[f, j] = 1
            for r, c in enumerate(piv):
                K[c, j] = (-R[r, f]) % p
        if _matmul_mod_p(A, K, p).any():
            return None
    return R, free


def _rref_mod_p_checked(A: np.ndarray, p: int):
    C = compress_mod_p(A, p)
    if C is not None:
        verdict = _compressed_verdict(A, C, p)
        if verdict is not None:
            R = verdict[0]
            return R.tolist(), _pivots_of(R)
    R, piv = rref_mod_p(A, p)
    return R.tolist(), piv


def _pivots_of(R: np.ndarray) -> List[int]:
    return [int(np.flatnonzero(row)[0]) for row in R]


def _matmul_mod_p(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    if float(p) * p * A.shape[1] < 2.0 ** 52:
        return np.remainder(A.astype(np.float64) @ B.astype(np.float64), p).astype(np.int64)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i in range(A.shape[1]):
        out = (out + np.outer(A[:, i], B[i]) % p) % p
    return out


def rank(rows, ncols: int, field: Field) -> int:
    if len(rows) == 0:
        return 0
    if field.is_prime_field:
        return rank_mod_p(np.array(rows, dtype=np.int64), field.p)
    return len(rref_rational(rows, ncols)[1])
