"""Rank and sum-rank weights, subspaces and Gaussian binomials."""

import numpy as np

from .finite_field import base_field
from .linalg import rank, rref


def rank_weight(F, v):
    """Rank over the base field of the matrix expansion of v."""
    v = list(v)
    if not any(v):
        return 0
    return rank(F.base, F.to_matrix(v))


def rank_distance(F, u, v):
    return rank_weight(F, F.vsub(u, v))


def sum_rank_weight(F, blocks):
    return sum(rank_weight(F, b) for b in blocks)


def sum_rank_distance(F, s, t):
    if len(s) != len(t) or any(len(a) != len(b) for a, b in zip(s, t)):
        raise ValueError("sequences differ in shape")
    return sum(rank_distance(F, a, b) for a, b in zip(s, t))


class Subspace:
    """A subspace of GF(q)^n stored by its reduced echelon basis."""

    def __init__(self, q, ambient_dim, basis):
        self.q = q
        self.ambient_dim = ambient_dim
        B = np.asarray(basis, dtype=np.int64).reshape(-1, ambient_dim)
        self.basis = B
        self.basis.flags.writeable = False

    @classmethod
    def from_rows(cls, q, rows, ambient_dim=None):
        M = np.asarray(rows, dtype=np.int64)
        if ambient_dim is None:
            ambient_dim = M.shape[-1]
        M = M.reshape(-1, ambient_dim)
        if M.shape[0] == 0:
            return cls(q, ambient_dim, M)
        R, piv = rref(base_field(q), M)
        return cls(q, ambient_dim, R[:len(piv)])

    @property
    def dim(self):
        return self.basis.shape[0]

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.q == other.q
                and self.ambient_dim == other.ambient_dim
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.q, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.ambient_dim)

    def __add__(self, other):
        _check_ambient(self, other)
        return Subspace.from_rows(self.q, np.vstack([self.basis, other.basis]), self.ambient_dim)

    def contains(self, v):
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        F = base_field(self.q)
        return rank(F, np.vstack([self.basis, v])) == self.dim


def _check_ambient(u, v):
    if u.ambient_dim != v.ambient_dim or u.q != v.q:
        raise ValueError("subspaces live in different ambient spaces")


def subspace_distance(u, v):
    """dim(U + V) - dim(U & V)."""
    _check_ambient(u, v)
    s = (u + v).dim
    return 2 * s - u.dim - v.dim


def gaussian_binomial(n, r, q=2):
    """Number of r-dimensional subspaces of GF(q)^n."""
    if r < 0 or r > n:
        raise ValueError("need 0 <= r <= n, got n=%d r=%d" % (n, r))
    num, den = 1, 1
    for i in range(r):
        num *= q ** n - q ** i
        den *= q ** r - q ** i
    return num // den
