"""Gaussian elimination over the base field (numpy) and the extension field (lists)."""

import numpy as np


def _as(M):
    return np.array(M, dtype=np.int64, copy=True, ndmin=2)


def rref(F, M):
    """Reduced row echelon form of M over the base field F.

    Returns (R, pivots) where R has the same shape as M and pivots lists
    the pivot column of each nonzero row, in order.
    """
    R = _as(M)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        piv = int(R[r, c])
        if piv != 1:
            R[r] = F.vmul(R[r], F.inv(piv))
        col = R[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            R[hit] = F.vsub(R[hit], F.vmul(col[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F, M):
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F, M):
    """Columns spanning the right kernel of M."""
    M = _as(M)
    cols = M.shape[1]
    R, piv = rref(F, M)
    free = [c for c in range(cols) if c not in piv]
    K = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        K[f, j] = 1
        for i, p in enumerate(piv):
            K[p, j] = F.neg(int(R[i, f]))
    return K


def matmul(F, A, B):
    A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
    if F.e == 1:
        if F.p == 2:
            return (A @ B) & 1
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for t in range(A.shape[1]):
        out = F.vadd(out, F.vmul(A[:, t:t + 1], B[t:t + 1, :]))
    return out


def inverse(F, M):
    """Inverse of a square matrix, or None if it is singular."""
    M = _as(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("matrix is not square")
    R, piv = rref(F, np.hstack([M, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] >= n:
        return None
    return R[:, n:]


def solve(F, A, b):
    """One solution x of A x = b, or None if inconsistent."""
    A = _as(A)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = rref(F, np.hstack([A, b]))
    n = A.shape[1]
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, p in enumerate(piv):
        x[p] = R[i, n]
    return x


def row_basis(F, M):
    """Nonzero rows of the reduced echelon form of M."""
    R, piv = rref(F, M)
    return R[:len(piv)]


def random_full_rank(F, rng, rows, cols):
    """Uniform matrix of rank min(rows, cols), by rejection."""
    while True:
        M = F.random(rng, (rows, cols))
        if rank(F, M) == min(rows, cols):
            return M


# --- extension field ------------------------------------------------------

def ext_rref(K, M):
    """Reduced row echelon form over the extension field K (list of rows)."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = K.inv(R[r][c])
        R[r] = [K.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def ext_rank(K, M):
    return len(ext_rref(K, M)[1])


def ext_solve(K, A, b):
    """One solution x of A x = b over K, or None if inconsistent."""
    n = len(A[0])
    R, piv = ext_rref(K, [list(row) + [v] for row, v in zip(A, b)])
    if piv and piv[-1] == n:
        return None
    x = [0] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


def ext_inverse(K, M):
    n = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    R, piv = ext_rref(K, aug)
    if len(piv) < n or piv[n - 1] >= n:
        return None
    return [row[n:] for row in R]

