"""(Partial) unit memory codes built from a single Gabidulin generator.

All submatrices are consecutive-row slices of one Moore matrix with rows
g^[0], g^[1], ... ("G_all"). With p = k1 - phi the rows split as

    rows [0, p)          A      (first part of G00)
    rows [p, k1)         Phi    (overlap rows, empty for the low-rate code)
    rows [k1, k)         G01
    rows [k, k + p)      B

so that G0 = (A; Phi; G01) and G10 = (Phi; B). A code block is then
uhat . G_all with

    uhat = (u[:p] | u[p:k1] + s[:phi] | u[k1:] | s[phi:])

where u is the current information block and s the first k1 symbols of
the previous one. For phi = 0 this is the plain (u | s) layout.
"""

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .gabidulin import GabidulinCode
from .linalg import ext_rank, ext_rref

UNBOUNDED = math.inf


@dataclass(frozen=True)
class Subcode:
    """A block code spanned by rows [lo, hi) of G_all."""

    name: str
    code: GabidulinCode
    lo: int
    hi: int

    @property
    def d(self):
        return self.code.d


@dataclass(frozen=True)
class DistanceProfile:
    d0: int
    d1: int
    d01: float
    d_sigma: int
    d10: int
    ell: int

    @property
    def slope(self):
        """Designed slope (lower bound), d_sigma / (ell + 1)."""
        return Fraction(self.d_sigma, self.ell + 1)

    @property
    def d_free(self):
        return min(self.d01, self.d0 + self.d1)

    def row(self, j):
        if j < 1:
            raise ValueError("order must be at least 1")
        if j == 1:
            return self.d01
        return self.d0 + (j - 2) * self.slope + self.d1

    def column(self, j):
        if j < 1:
            raise ValueError("order must be at least 1")
        return self.d0 + (j - 1) * self.slope

    def reverse_column(self, j):
        if j < 1:
            raise ValueError("order must be at least 1")
        return (j - 1) * self.slope + self.d1


class PumCode:
    """Rate k/n (P)UM code over a Gabidulin generator.

    phi = 0 gives the low-rate construction with k + k1 <= n; phi > 0
    gives the arbitrary-rate construction with k + k1 - phi <= n.
    """

    def __init__(self, field, n, k, k1, phi=0, g=None):
        if not 1 <= k1 <= k:
            raise ValueError("need 1 <= k1 <= k, got k1=%d k=%d" % (k1, k))
        if not 0 <= phi < k1:
            raise ValueError("need 0 <= phi < k1, got phi=%d k1=%d" % (phi, k1))
        if k + k1 - phi > n:
            raise ValueError("need k + k1 - phi <= n, got %d > %d" % (k + k1 - phi, n))
        if n > field.m:
            raise ValueError("need n <= m, got n=%d m=%d" % (n, field.m))
        F = field
        self.field = F
        self.n, self.k, self.k1, self.phi = n, k, k1, phi
        self.p = k1 - phi
        self.mu = 1
        self.nu = k1
        self.g = tuple(F.basis[:n] if g is None else g)
        if len(self.g) != n:
            raise ValueError("need %d locators" % n)
        p = self.p
        self.sigma = Subcode("C_sigma", GabidulinCode(F, self.g, k + p), 0, k + p)
        rows = self.sigma.code.G
        self.rows = rows
        self.G0 = [list(r) for r in rows[:k]]
        self.G00 = self.G0[:k1]
        self.G01 = self.G0[k1:]
        self.G10 = [list(r) for r in rows[p:k1] + rows[k:k + p]]
        self.G1 = self.G10 + [[0] * n for _ in range(k - k1)]

        def shifted(s, dim, name):
            return Subcode(name, GabidulinCode(F, [F.frob(x, s) for x in self.g], dim), s, s + dim)

        self.c0 = Subcode("C_0", GabidulinCode(F, self.g, k), 0, k)
        self.c1 = shifted(p, k, "C_1")
        self.c01 = shifted(k1, k - k1, "C_01") if k > k1 else None
        # the tail block only uses rows Phi and B; consecutive when phi = 0 or k = k1
        if phi == 0:
            self.c10 = shifted(k, k1, "C_10")
        else:
            self.c10 = replace(self.c1, name="C_10")
        self.ell = -(-phi // p)
        self.profile = DistanceProfile(
            d0=n - k + 1,
            d1=n - k + 1,
            d01=n - k + k1 + 1 if k > k1 else UNBOUNDED,
            d_sigma=n - k - k1 + phi + 1,
            d10=n - k1 + 1 if phi == 0 else n - k + 1,
            ell=self.ell,
        )

    def __repr__(self):
        return "PumCode(n=%d, k=%d, k1=%d, phi=%d)" % (self.n, self.k, self.k1, self.phi)

    @property
    def is_unit_memory(self):
        return self.k1 == self.k

    # --- coefficient layout
    def uhat(self, u, s):
        """Coefficients over G_all of a block with info u and previous state s."""
        F, p, k1, phi = self.field, self.p, self.k1, self.phi
        mid = [F.add(a, b) for a, b in zip(u[p:k1], s[:phi])]
        return list(u[:p]) + mid + list(u[k1:]) + list(s[phi:])

    def encode_block(self, u, s):
        return self.field.vec_mat(self.uhat(u, s), self.rows)

    def state_part(self, s):
        """Contribution s . G10 of the previous state."""
        return self.field.vec_mat(list(s), self.G10)

    def head_part(self, s):
        """Contribution s . G00 of the first k1 info symbols of this block."""
        return self.field.vec_mat(list(s), self.G00)

    def encode(self, info):
        """Zero-terminated encoding of N info blocks into N + 1 code blocks."""
        k, k1 = self.k, self.k1
        out = []
        s = [0] * k1
        for u in info:
            if len(u) != k:
                raise ValueError("info block has length %d, expected %d" % (len(u), k))
            out.append(self.encode_block(list(u), s))
            s = list(u[:k1])
        out.append(self.encode_block([0] * k, s))
        return out

    def designed_distances(self, j):
        pr = self.profile
        return {"row": pr.row(j), "column": pr.column(j), "reverse_column": pr.reverse_column(j)}

    def is_minimal_basic(self):
        return minimal_basic(self.field, self.G0, self.G1)

    def max_zero_run(self):
        return self.ell

    def reconstruct_info(self, window, N=None):
        """Recover information from decoded code blocks.

        window maps depth -> code block (consecutive depths, normally
        ell + 1 of them). N, when given, is the number of info blocks, so
        depth N is the tail block. Returns (info, states): info maps depth
        to every fully determined info block, states maps depth to its
        first k1 symbols where those are determined. Raises ValueError if a
        block is not in its subcode or the window is inconsistent.
        """
        coeffs = {}
        for depth, c in window.items():
            if depth == 0:
                coeffs[depth] = self.c0.code.unencode(c)
            elif N is not None and depth == N:
                coeffs[depth] = self.unencode_tail(c)
            else:
                coeffs[depth] = self.sigma.code.unencode(c)
        return solve_window(self, coeffs, N)

    def unencode_tail(self, c):
        """Previous state from a tail block c = s . G10."""
        u = self.c10.code.unencode(c)
        if self.phi == 0:
            return u
        p, k1 = self.p, self.k1
        if any(u[k1 - p:self.k - p]):
            raise ValueError("tail block uses rows outside G10")
        # C_1 info layout is (Phi | G01 | B)
        return list(u[:self.phi]) + list(u[self.k - p:])


def minimal_basic(F, G0, G1):
    """Rank test on the highest-degree coefficient matrix of G0 + G1 D.

    A row takes its G1 coefficients when those are nonzero, else its G0
    coefficients; the encoder is minimal basic iff the result has full rank.
    """
    high = [r1 if any(r1) else r0 for r0, r1 in zip(G0, G1)]
    return ext_rank(F, high) == len(G0)


def solve_window(code, coeffs, N=None):
    """Solve the linear relations between decoded blocks and info blocks.

    coeffs maps depth -> decoded coefficients: for depth 0 the info block,
    for depth N (if given) the final state, otherwise the G_all
    coefficients uhat. Unknowns are the info blocks u^(j) for depths
    j in [min - 1, max], with u^(-1) = 0 and u^(N) = 0.
    Returns (info, states) for every depth whose values are determined.
    """
    F, k, k1, p, phi = code.field, code.k, code.k1, code.p, code.phi
    depths = sorted(coeffs)
    lo, hi = depths[0], depths[-1]
    var_depths = [j for j in range(lo - 1, hi + 1) if j >= 0 and (N is None or j < N)]
    index = {j: t for t, j in enumerate(var_depths)}
    nvar = k * len(var_depths)

    def var(j, a):
        return None if j not in index else index[j] * k + a

    rows = []

    def eq(terms, rhs):
        row = [0] * (nvar + 1)
        for v in terms:
            if v is not None:
                row[v] = F.add(row[v], 1)
        row[nvar] = rhs
        rows.append(row)

    for j in depths:
        c = coeffs[j]
        if j == 0:
            for a in range(k):
                eq([var(0, a)], c[a])
        elif N is not None and j == N:
            for a in range(k1):
                eq([var(N - 1, a)], c[a])
        else:
            for a in range(p):
                eq([var(j, a)], c[a])
            for a in range(phi):
                eq([var(j, p + a), var(j - 1, a)], c[p + a])
            for a in range(k1, k):
                eq([var(j, a)], c[a])
            for a in range(k1 - phi):
                eq([var(j - 1, phi + a)], c[k + a])
    R, piv = ext_rref(F, rows)
    if piv and piv[-1] == nvar:
        raise ValueError("inconsistent window")
    free = [v for v in range(nvar) if v not in piv]
    known = {}
    for i, v in enumerate(piv):
        if all(R[i][f] == 0 for f in free):
            known[v] = R[i][nvar]
    info, states = {}, {}
    for j in range(lo - 1, hi + 1):
        if j < 0 or (N is not None and j >= N):
            vals = [0] * k if (j == -1 or (N is not None and j == N)) else None
        elif all(index[j] * k + a in known for a in range(k)):
            vals = [known[index[j] * k + a] for a in range(k)]
        else:
            vals = None
            head = [index[j] * k + a for a in range(k1)]
            if all(v in known for v in head):
                states[j] = [known[v] for v in head]
        if vals is not None:
            info[j] = vals
            states[j] = vals[:k1]
    return info, states


def pum_construct(n, k, k1, phi, g, field):
    return PumCode(field, n, k, k1, phi, g)


def pum_encode(code, info):
    return code.encode(info)
