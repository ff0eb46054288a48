"""Dense linear algebra over a prime field F_p on numpy int64 arrays."""

import numpy as np


def matmul_mod(A, B, p):
    # float64 products are exact while n * (p-1)^2 < 2^53
    n = A.shape[-1]
    if n * (p - 1) ** 2 < 2 ** 52:
        C = np.asarray(A, dtype=np.float64) @ np.asarray(B, dtype=np.float64)
        return np.mod(C, p).astype(np.int64)
    return np.mod(np.asarray(A, dtype=object) @ np.asarray(B, dtype=object), p).astype(np.int64)


def matpow_mod(A, k, p):
    n = A.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = A % p
    while k:
        if k & 1:
            result = matmul_mod(result, base, p)
        base = matmul_mod(base, base, p)
        k >>= 1
    return result


def rref(M, p):
    """Reduced row echelon form mod p; returns (R, pivot columns)."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, p):
    return len(rref(M, p)[1])


def nullspace(M, p):
    """Basis (as rows) of {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, pivots = rref(M, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-R[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def solve(A, b, p):
    """One solution x of A x = b, or None when inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, pivots = rref(np.hstack([A, b]), p)
    n = A.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n]
    return x


def coordinates(basis_rows, v, p):
    """Coordinates of v in the span of basis_rows (None if v is outside)."""
    return solve(np.asarray(basis_rows).T, v, p)
