"""Lifting, the operator channel and receiver-side processing.

A code block C (m x n over GF(q)) is sent as the n packets of
X = [I_n | C^T]. The network delivers Y = A X + B Z; the receiver brings Y
to reduced echelon form, pads it with zero rows so that the identity part
is square again, and reads off the received matrix R together with the
row-erasure space A_R and the column-erasure space B_C.

Affine lifting drops the first identity column: X = [I' | C^T] with
I' = [0; I_{n-1}]. If the network only forms affine combinations (the
coefficients of every received packet sum to one), prepending a column of
ones turns the problem back into the linear one with a known invertible
left block L, which is undone at the end.
"""

from dataclasses import dataclass

import numpy as np

from .brd import ReceivedBlock, brd_decode
from .finite_field import base_field
from .gabidulin import ErasureSideInfo
from .linalg import matmul, rank, rref
from .rank_metric import Subspace


def lifted_matrix(C):
    C = np.asarray(C, dtype=np.int64)
    n = C.shape[1]
    return np.hstack([np.eye(n, dtype=np.int64), C.T])


def affine_lifted_matrix(C):
    C = np.asarray(C, dtype=np.int64)
    n = C.shape[1]
    I = np.vstack([np.zeros((1, n - 1), dtype=np.int64), np.eye(n - 1, dtype=np.int64)])
    return np.hstack([I, C.T])


def lift_block(q, C):
    """Row space of [I_n | C^T]."""
    X = lifted_matrix(C)
    return Subspace.from_rows(q, X, X.shape[1])


def lift_affine(q, C):
    X = affine_lifted_matrix(C)
    return Subspace.from_rows(q, X, X.shape[1])


def lift_sequence(field, blocks):
    return [lift_block(field.q, field.to_matrix(c)) for c in blocks]


@dataclass
class ChannelShot:
    A: np.ndarray
    B: np.ndarray
    Z: np.ndarray
    kept: list

    @property
    def n_i(self):
        return self.A.shape[0]


@dataclass
class ReceiverShot:
    """Received packets of one shot, dependent rows already removed."""

    Y: np.ndarray
    n: int
    q: int = 2
    affine: bool = False
    channel: ChannelShot = None

    @property
    def n_i(self):
        return self.Y.shape[0]

    def homogeneous(self):
        if not self.affine:
            return self.Y
        return np.hstack([np.ones((self.Y.shape[0], 1), dtype=np.int64), self.Y])

    @property
    def A_hat(self):
        return self.homogeneous()[:, :self.n]

    @property
    def rank_A(self):
        return rank(base_field(self.q), self.A_hat)

    @property
    def gamma(self):
        return self.n - self.rank_A

    @property
    def rho(self):
        return self.n_i - self.rank_A


def _independent_rows(F, M):
    keep, acc = [], np.zeros((0, M.shape[1]), dtype=np.int64)
    for i, row in enumerate(M):
        trial = np.vstack([acc, row[None, :]])
        if rank(F, trial) > acc.shape[0]:
            keep.append(i)
            acc = trial
    return keep


def operator_channel(X, rng, n_i=None, error_packets=0, erased_packets=0, q=2,
                     affine=False, n=None):
    """Random multiplicative-additive channel on the rows of X.

    erased_packets rows of X never reach the receiver, error_packets
    random packets are injected, and the receiver gets n_i random
    combinations (default: one per surviving or injected packet).
    With affine=True every combination's coefficients sum to one.
    """
    F = base_field(q)
    X = np.asarray(X, dtype=np.int64)
    rows, width = X.shape
    if n is None:
        n = rows
    if not 0 <= erased_packets <= rows:
        raise ValueError("cannot erase %d of %d packets" % (erased_packets, rows))
    kept = sorted(rng.choice(rows, size=rows - erased_packets, replace=False).tolist())
    Z = np.zeros((error_packets, width), dtype=np.int64)
    for i in range(error_packets):
        while not Z[i].any():
            Z[i] = F.random(rng, width)
    srcs = np.vstack([X[kept], Z])
    s = srcs.shape[0]
    if n_i is None:
        n_i = s
    while True:
        W = F.random(rng, (n_i, s))
        if affine and s:
            W[:, 0] = F.vsub(np.ones(n_i, dtype=np.int64),
                             _row_sums(F, W[:, 1:]))
        if s == 0 or rank(F, W) == min(n_i, s):
            break
    Y = matmul(F, W, srcs) if s else np.zeros((n_i, width), dtype=np.int64)
    D = np.zeros((len(kept), rows), dtype=np.int64)
    D[np.arange(len(kept)), kept] = 1
    chan = ChannelShot(matmul(F, W[:, :len(kept)], D) if kept else np.zeros((n_i, rows), dtype=np.int64),
                       W[:, len(kept):], Z, kept)
    shot = ReceiverShot(Y, n, q, affine, chan)
    keep = _independent_rows(F, shot.homogeneous()) if n_i else []
    shot.Y = Y[keep]
    return shot


def _row_sums(F, M):
    out = np.zeros(M.shape[0], dtype=np.int64)
    for j in range(M.shape[1]):
        out = F.vadd(out, M[:, j])
    return out


@dataclass
class Decomposition:
    R: np.ndarray
    side: ErasureSideInfo
    U: list
    padded: np.ndarray


def rre_decompose(shot, m):
    """Received matrix and erasure side information of one shot.

    Follows the zero-padded reduced echelon layout
        ( I_n + B_C^T I_U^T   R^T   )
        ( 0                   A_R^T )
    where U lists the identity columns without a pivot.
    """
    F = base_field(shot.q)
    n = shot.n
    H = shot.homogeneous()
    if H.shape[1] != n + m:
        raise ValueError("received packets have width %d, expected %d" % (H.shape[1], n + m))
    if H.shape[0] and rank(F, H) != H.shape[0]:
        raise ValueError("received matrix does not have full row rank")
    Rr, piv = rref(F, H) if H.shape[0] else (H, [])
    top = {p: Rr[i] for i, p in enumerate(piv) if p < n}
    bottom = np.array([Rr[i] for i, p in enumerate(piv) if p >= n], dtype=np.int64).reshape(-1, n + m)
    U = [j for j in range(n) if j not in top]
    T = np.zeros((n, n + m), dtype=np.int64)
    for j, row in top.items():
        T[j] = row
    B_C = np.zeros((len(U), n), dtype=np.int64)
    for idx, u in enumerate(U):
        col = T[:n, u].copy()
        col[u] = F.sub(int(col[u]), 1)
        B_C[idx] = col
    R = T[:, n:].T.copy()
    A_R = bottom[:, n:].T.copy()
    padded = np.vstack([T, bottom])
    if shot.affine:
        L = np.eye(n, dtype=np.int64)
        L[:, 0] = 1
        R = matmul(F, R, L.T)
        B_C = matmul(F, B_C, L.T) if len(U) else B_C
    return Decomposition(R, ErasureSideInfo(A_R, B_C), U, padded)


def effective_errors(q, E, side):
    """Number of full errors in E beyond the known erasure spaces."""
    F = base_field(q)
    A_R, B_C = side.A_R, side.B_C
    top = np.hstack([E, A_R])
    bot = np.hstack([B_C, np.zeros((B_C.shape[0], A_R.shape[1]), dtype=np.int64)])
    return rank(F, np.vstack([top, bot])) - side.rho - side.gamma


def received_blocks(field, shots):
    """Decompose every shot into a received word with side information."""
    out, dec = [], []
    for shot in shots:
        d = rre_decompose(shot, field.m)
        dec.append(d)
        out.append(ReceivedBlock(tuple(field.from_matrix(d.R)), d.side))
    return out, dec


def network_decode(code, shots, trace=False):
    """Decode N + 1 received shots into the information sequence.

    Returns the decoder result; its info_sequence holds the N info blocks
    and decompositions the per-shot receiver data.
    """
    blocks, dec = received_blocks(code.field, shots)
    res = brd_decode(code, blocks, trace)
    res.decompositions = dec
    return res
