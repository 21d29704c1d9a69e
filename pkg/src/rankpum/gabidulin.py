"""Gabidulin codes with an error-and-erasure decoder.

The decoder works on syndromes. Column erasures (known row space B_C)
are removed by applying the subspace polynomial of their syndrome
locators; row erasures (known column space A_R) are removed by the
subspace polynomial of their error values. What is left is an errors-only
key equation, solved with a linearized Berlekamp-Massey recursion. The
error span is then recovered from the roots, the error locations from a
Moore system, and finally the column-erasure values from a second Moore
system. Everything is O(n^2) extension-field operations except root
finding, which is a base-field kernel computation of size m.

Decoding succeeds whenever 2t + rho + gamma <= n - k.
"""

from dataclasses import dataclass

import numpy as np

from .finite_field import LinearizedPoly, moore_matrix, root_space, subspace_poly
from .linalg import ext_inverse, ext_rref, ext_solve, matmul, random_full_rank, solve


class DecodeFailure:
    """Returned (not raised) when no codeword is found within the radius."""

    def __init__(self, reason=""):
        self.reason = reason

    def __repr__(self):
        return "DecodeFailure(%r)" % self.reason

    def __bool__(self):
        return False


def failed(x):
    return isinstance(x, DecodeFailure)


class NotACodewordError(ValueError):
    pass


@dataclass(frozen=True)
class ErasureSideInfo:
    """Known column space of row erasures and row space of column erasures."""

    A_R: np.ndarray  # m x rho
    B_C: np.ndarray  # gamma x n

    @classmethod
    def empty(cls, m, n):
        return cls(np.zeros((m, 0), dtype=np.int64), np.zeros((0, n), dtype=np.int64))

    @property
    def rho(self):
        return self.A_R.shape[1]

    @property
    def gamma(self):
        return self.B_C.shape[0]

    @property
    def erasures(self):
        return self.rho + self.gamma


@dataclass(frozen=True)
class ErrorDecomposition:
    """Error matrix E = A_R B_R + A_C B_C + A_E B_E with full-rank factors."""

    A_R: np.ndarray
    B_R: np.ndarray
    A_C: np.ndarray
    B_C: np.ndarray
    A_E: np.ndarray
    B_E: np.ndarray
    q: int = 2

    @property
    def t(self):
        return self.A_E.shape[1]

    @property
    def rho(self):
        return self.A_R.shape[1]

    @property
    def gamma(self):
        return self.B_C.shape[0]

    def matrix(self):
        from .finite_field import base_field

        F = base_field(self.q)
        A = np.hstack([self.A_R, self.A_C, self.A_E])
        B = np.vstack([self.B_R, self.B_C, self.B_E])
        return matmul(F, A, B)

    def side(self):
        return ErasureSideInfo(self.A_R, self.B_C)


class GabidulinCode:
    """Gabidulin code Gab[n, k] with locators g and Moore generator G."""

    def __init__(self, field, g, k):
        g = [int(x) for x in g]
        n = len(g)
        if not 1 <= k <= n:
            raise ValueError("need 1 <= k <= n, got k=%d n=%d" % (k, n))
        if n > field.m:
            raise ValueError("code length %d exceeds extension degree %d" % (n, field.m))
        self.field = field
        self.n, self.k = n, k
        self.g = tuple(g)
        self.G = moore_matrix(field, g, k)
        self.d = n - k + 1
        self._ginv = ext_inverse(field, [row[:k] for row in self.G])
        self._h = self._parity_locators() if k < n else ()

    def __repr__(self):
        return "Gab[%d,%d]" % (self.n, self.k)

    def _parity_locators(self):
        F, n, k = self.field, self.n, self.k
        # rows g^[j] for j = -(n-k-1) .. k-1, kernel over the extension field
        rows = [[F.frob(x, j) for x in self.g] for j in range(-(n - k - 1), k)]
        R, piv = ext_rref(F, rows)
        free = [c for c in range(n) if c not in piv]
        assert len(free) == 1, "parity locator kernel is not one-dimensional"
        f = free[0]
        h = [0] * n
        h[f] = 1
        for i, p in enumerate(piv):
            h[p] = F.neg(R[i][f])
        return tuple(h)

    @property
    def h(self):
        return self._h

    def encode(self, u):
        if len(u) != self.k:
            raise ValueError("info vector has length %d, expected %d" % (len(u), self.k))
        return self.field.vec_mat(u, self.G)

    def unencode(self, c):
        if len(c) != self.n:
            raise ValueError("word has length %d, expected %d" % (len(c), self.n))
        u = self.field.vec_mat(list(c[:self.k]), self._ginv)
        if self.encode(u) != list(c):
            raise NotACodewordError("word is not a codeword of %r" % self)
        return u

    def syndrome(self, r, count=None):
        F = self.field
        if count is None:
            count = self.n - self.k
        return [F.dot(r, [F.frob(x, l) for x in self._h]) for l in range(count)]

    def is_codeword(self, r):
        return not any(self.syndrome(r))

    def decode(self, r, side=None):
        """Error-erasure decoding; returns a codeword or a DecodeFailure."""
        return _decode(self, list(r), side)


def _decode(code, r, side):
    F, n, k = code.field, code.n, code.k
    if len(r) != n:
        raise ValueError("received word has length %d, expected %d" % (len(r), n))
    if side is None:
        side = ErasureSideInfo.empty(F.m, n)
    rho, gamma = side.rho, side.gamma
    if side.A_R.shape[0] != F.m or side.B_C.shape[1] != n:
        raise ValueError("side information does not match the code dimensions")
    if k == n:
        return r if rho + gamma == 0 else DecodeFailure("no redundancy")
    if rho + gamma > n - k:
        return DecodeFailure("too many erasures")
    s = code.syndrome(r)
    if not any(s):
        return r
    h = code.h

    # column erasures: locators x_C and their subspace polynomial
    xC = []
    for row in side.B_C:
        xc = 0
        for b, hi in zip(row, h):
            if b:
                xc = F.add(xc, F.scal(int(b), hi))
        xC.append(xc)
    Gam = subspace_poly(F, xC)
    if Gam.qdeg != gamma:
        return DecodeFailure("column erasure locators are dependent")
    gc = Gam.coeffs
    s1 = []
    for l in range(n - k - gamma):
        v = 0
        for i, c in enumerate(gc):
            if c:
                v = F.add(v, F.mul(F.frob(c, l), s[i + l]))
        s1.append(v)

    # row erasures: known error values a_R
    aR = F.from_matrix(side.A_R) if rho else []
    LamR = subspace_poly(F, aR)
    if LamR.qdeg != rho:
        return DecodeFailure("row erasure values are dependent")
    lr = LamR.coeffs
    s2 = []
    for l in range(len(s1) - rho):
        v = 0
        for i, c in enumerate(lr):
            if c:
                v = F.add(v, F.mul(c, F.frob(s1[l + rho - i], i)))
        s2.append(v)

    LamE, L = _berlekamp_massey(F, s2)
    if 2 * L > len(s2):
        return DecodeFailure("error span too large")
    Lam = LamE.compose(LamR)
    alpha = root_space(F, Lam)
    if len(alpha) != rho + L:
        return DecodeFailure("error span polynomial has too few roots")

    # error locations: s1_l^[-l] = sum_j alpha_j^[-l] z_j
    e = [0] * n
    if alpha:
        A = [[F.frob(a, -l) for a in alpha] for l in range(len(s1))]
        b = [F.frob(v, -l) for l, v in enumerate(s1)]
        z = ext_solve(F, A, b)
        if z is None:
            return DecodeFailure("inconsistent error locator system")
        Gh = F.to_matrix([Gam(x) for x in h])
        for a, zj in zip(alpha, z):
            bt = solve(F.base, Gh, F.to_matrix([zj])[:, 0])
            if bt is None:
                return DecodeFailure("error location outside the code support")
            for i, bi in enumerate(bt):
                if bi:
                    e[i] = F.add(e[i], F.scal(int(bi), a))
    r1 = F.vsub(r, e)

    # column erasure values from a gamma x gamma Moore system
    if gamma:
        sc = code.syndrome(r1, gamma)
        M = [[F.frob(x, l) for x in xC] for l in range(gamma)]
        aC = ext_solve(F, M, sc)
        if aC is None:
            return DecodeFailure("singular column erasure system")
        for a, row in zip(aC, side.B_C):
            for i, b in enumerate(row):
                if b:
                    r1[i] = F.sub(r1[i], F.scal(int(b), a))
    if not code.is_codeword(r1):
        return DecodeFailure("result is not a codeword")
    return r1


def _berlekamp_massey(F, s):
    """Shortest linearized recurrence sum_i C_i s_{r-i}^[i] = 0."""
    C = LinearizedPoly(F, [1])
    B = LinearizedPoly(F, [1])
    L, m, b = 0, 1, 1
    for r in range(len(s)):
        d = 0
        for i, c in enumerate(C.coeffs):
            if c and r - i >= 0:
                d = F.add(d, F.mul(c, F.frob(s[r - i], i)))
        if d == 0:
            m += 1
            continue
        coef = F.div(d, F.frob(b, m))
        upd = LinearizedPoly.x(F, m).compose(B).scale(coef)
        if 2 * L <= r:
            T = C
            C = C - upd
            L = r + 1 - L
            B, b, m = T, d, 1
        else:
            C = C - upd
            m += 1
    return C, L


def gab_new(n, k, g, field):
    if len(g) != n:
        raise ValueError("need %d locators" % n)
    return GabidulinCode(field, g, k)


def gab_encode(code, u):
    return code.encode(u)


def gab_unencode(code, c):
    return code.unencode(c)


def gab_decode_ee(code, r, side=None):
    return code.decode(r, side)


def gab_random_error(field, n, t, rho, gamma, rng):
    """Random error with t full errors, rho row and gamma column erasures."""
    m, tau = field.m, t + rho + gamma
    if min(t, rho, gamma) < 0 or tau > min(m, n):
        raise ValueError("infeasible error counts t=%d rho=%d gamma=%d" % (t, rho, gamma))
    Fq = field.base
    A = random_full_rank(Fq, rng, m, tau) if tau else np.zeros((m, 0), dtype=np.int64)
    B = random_full_rank(Fq, rng, tau, n) if tau else np.zeros((0, n), dtype=np.int64)
    cut = (0, rho, rho + gamma, tau)
    part = [(A[:, cut[i]:cut[i + 1]], B[cut[i]:cut[i + 1]]) for i in range(3)]
    return ErrorDecomposition(part[0][0], part[0][1], part[1][0], part[1][1],
                              part[2][0], part[2][1], field.q)


def error_vector(field, err):
    return field.from_matrix(err.matrix())

