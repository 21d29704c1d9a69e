"""Arithmetic in GF(q) and GF(q^m).

Elements of both fields are plain Python ints. A base-field element of
GF(p^e) packs its polynomial coefficients as base-p digits; an element of
GF(q^m) packs its m coordinates (power basis of the modulus) as base-q
digits, little-endian. For q = 2 this is the usual bit packing.

Matrices over the base field are numpy integer arrays. Vectors and
matrices over the extension field are lists of ints.
"""

from functools import lru_cache

import numpy as np

from ._moduli import GF2_MODULI

TABLE_LIMIT = 1 << 16


def _prime_power(q):
    if q < 2:
        raise ValueError("field order must be at least 2, got %d" % q)
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError("%d is not a prime power" % q)
    return p, e


def _factor(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def digits(x, base, count):
    out = []
    for _ in range(count):
        x, d = divmod(x, base)
        out.append(d)
    return out


def undigits(ds, base):
    x = 0
    for d in reversed(list(ds)):
        x = x * base + int(d)
    return x


# --- polynomials over a field, little-endian coefficient lists -------------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _psub(F, a, b):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _ptrim([F.sub(x, y) for x, y in zip(a, b)])


def _pmul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _ptrim(out)


def _pmod(F, a, f):
    a = list(a)
    inv_lead = F.inv(f[-1])
    df = len(f) - 1
    while len(_ptrim(a)) - 1 >= df:
        c = F.mul(a[-1], inv_lead)
        shift = len(a) - 1 - df
        for i, y in enumerate(f):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, y))
    return a


def _pgcd(F, a, b):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(F, a, b)
    return a


def _ppowmod(F, a, e, f):
    result, base = [1], _pmod(F, a, f)
    while e:
        if e & 1:
            result = _pmod(F, _pmul(F, result, base), f)
        base = _pmod(F, _pmul(F, base, base), f)
        e >>= 1
    return result


def is_irreducible(F, f):
    """Rabin's test for a monic polynomial f over the field F."""
    f = _ptrim(list(f))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]

    def xpow(i):
        h = x
        for _ in range(i):
            h = _ppowmod(F, h, F.q, f)
        return h

    if _psub(F, xpow(m), _pmod(F, x, f)):
        return False
    for r in _factor(m):
        g = _pgcd(F, f, _psub(F, xpow(m // r), x))
        if len(g) > 1:
            return False
    return True


def find_irreducible(F, m):
    """Smallest monic irreducible polynomial of degree m, by integer packing."""
    for low in range(F.q ** m):
        coeffs = digits(low, F.q, m)
        if m > 1 and coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if is_irreducible(F, f):
            return f
    raise ValueError("no irreducible polynomial found")


# --- base field -----------------------------------------------------------

class BaseField:
    """The finite field GF(q), q a prime power.

    Scalar methods take ints; the ``v*`` methods take numpy arrays and
    work elementwise.
    """

    def __init__(self, q):
        p, e = _prime_power(q)
        if q > TABLE_LIMIT:
            raise ValueError("base field order above 2^16 is not supported")
        self.q, self.p, self.e = q, p, e
        if e > 1:
            prime = BaseField(p)
            self.modulus = find_irreducible(prime, e)
            self._build_tables(prime)

    def _build_tables(self, prime):
        q = self.q
        # find a generator by brute force, it is cheap at this size
        orders = [(q - 1) // r for r in _factor(q - 1)]
        f = self.modulus
        for g in range(2, q):
            gp = digits(g, self.p, self.e)
            if all(_ptrim(_ppowmod(prime, gp, o, f)) != [1] for o in orders):
                break
        exp = np.zeros(2 * q, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = [1]
        for i in range(q - 1):
            v = undigits(x + [0] * (self.e - len(x)), self.p)
            exp[i] = exp[i + q - 1] = v
            log[v] = i
            x = _pmod(prime, _pmul(prime, x, gp), f)
        self._exp, self._log = exp, log
        self._pw = self.p ** np.arange(self.e)

    def __repr__(self):
        return "BaseField(%d)" % self.q

    def __eq__(self, other):
        return isinstance(other, BaseField) and other.q == self.q

    def __hash__(self):
        return hash(("BaseField", self.q))

    # scalar ops
    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return undigits([(x + y) % self.p for x, y in
                         zip(digits(a, self.p, self.e), digits(b, self.p, self.e))], self.p)

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return undigits([(-x) % self.p for x in digits(a, self.p, self.e)], self.p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # array ops
    def vadd(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da = (a[..., None] // self._pw) % self.p
        db = (b[..., None] // self._pw) % self.p
        return (((da + db) % self.p) * self._pw).sum(-1)

    def vneg(self, a):
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        da = (a[..., None] // self._pw) % self.p
        return (((-da) % self.p) * self._pw).sum(-1)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def random(self, rng, shape):
        return rng.integers(0, self.q, size=shape, dtype=np.int64)


@lru_cache(maxsize=None)
def base_field(q):
    return BaseField(q)


# --- extension field ------------------------------------------------------

def default_modulus(q, m):
    """Built-in modulus for GF(q^m), as a packed int including the leading 1."""
    if q == 2 and m in GF2_MODULI:
        return GF2_MODULI[m]
    F = base_field(q)
    return undigits(find_irreducible(F, m), q)


def _clmul(a, b):
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


class GF:
    """The extension field GF(q^m) over GF(q).

    Parameters
    ----------
    q : int
        Base field order, a prime power.
    m : int
        Extension degree.
    modulus : int, optional
        Monic irreducible polynomial of degree m over GF(q), packed as
        base-q digits including the leading coefficient. Defaults to the
        built-in table (q = 2) or the smallest irreducible polynomial.
    basis : sequence of int, optional
        Ordered basis of GF(q^m) over GF(q) used by the matrix map.
        Defaults to the power basis 1, a, ..., a^(m-1).
    """

    def __init__(self, q=2, m=8, modulus=None, basis=None):
        if m < 1:
            raise ValueError("extension degree must be positive")
        self.base = base_field(q)
        self.q, self.m = q, m
        self.order = q ** m
        if modulus is None:
            modulus = default_modulus(q, m)
        self.modulus = modulus
        self._mod = digits(modulus, q, m + 1)
        if modulus >= q ** (m + 1) or self._mod[m] != 1:
            raise ValueError("modulus must be monic of degree %d" % m)
        if not is_irreducible(self.base, self._mod):
            raise ValueError("modulus %x is not irreducible over GF(%d)" % (modulus, q))
        self._bin = q == 2
        self._red = modulus ^ (1 << m) if self._bin else None
        self._table = self.order <= TABLE_LIMIT
        if self._table:
            self._build_tables()
        if basis is None:
            basis = [q ** i for i in range(m)]
        self.basis = tuple(int(b) for b in basis)
        if len(self.basis) != m:
            raise ValueError("basis must have %d elements" % m)
        # matrix whose column i holds the power-basis coordinates of basis[i]
        from .linalg import inverse

        B = np.array([self.coords(b) for b in self.basis], dtype=np.int64).T
        self._basis_inv = inverse(self.base, B)
        if self._basis_inv is None:
            raise ValueError("basis elements are linearly dependent")
        self._basis_mat = B

    def __repr__(self):
        return "GF(%d^%d, modulus=%x)" % (self.q, self.m, self.modulus)

    def __eq__(self, other):
        return (isinstance(other, GF) and other.q == self.q and other.m == self.m
                and other.modulus == self.modulus and other.basis == self.basis)

    def __hash__(self):
        return hash((self.q, self.m, self.modulus, self.basis))

    def header(self):
        return "q=%d m=%d modulus=%x" % (self.q, self.m, self.modulus)

    # --- slow path multiplication, also used to build the tables
    def _mul_poly(self, a, b):
        if self._bin:
            x = _clmul(a, b)
            m = self.m
            while x.bit_length() > m:
                s = x.bit_length() - 1 - m
                x ^= self.modulus << s
            return x
        F, q, m = self.base, self.q, self.m
        prod = _pmul(F, _ptrim(digits(a, q, m)), _ptrim(digits(b, q, m)))
        r = _pmod(F, prod, self._mod) if len(prod) > m else prod
        return undigits(r[:m], q)

    def _build_tables(self):
        n = self.order - 1
        orders = [n // r for r in _factor(n)] if n > 1 else []
        for g in range(1 if n == 1 else 2, self.order):
            if all(self._slow_pow(g, o) != 1 for o in orders):
                break
        self.generator = g
        exp = [0] * (2 * n + 1)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = exp[i + n] = x
            log[x] = i
            x = self._mul_poly(x, g)
        exp[2 * n] = exp[0]
        self._exp, self._log = exp, log

    def _slow_pow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_poly(r, a)
            a = self._mul_poly(a, a)
            e >>= 1
        return r

    # --- arithmetic
    def add(self, a, b):
        if self._bin:
            return a ^ b
        return self._addd(a, b, 1)

    def sub(self, a, b):
        if self._bin:
            return a ^ b
        return self._addd(a, b, -1)

    def _addd(self, a, b, sign):
        F, q = self.base, self.q
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, q)
            b, y = divmod(b, q)
            out += scale * (F.add(x, y) if sign > 0 else F.sub(x, y))
            scale *= q
        return out

    def neg(self, a):
        if self._bin:
            return a
        return self._addd(0, a, -1)

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._table:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_poly(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in %r" % self)
        if self._table:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            return 0 if e > 0 else 1
        e %= self.order - 1
        if self._table:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        return self._slow_pow(a, e)

    def frob(self, a, i=1):
        """a^(q^i); negative i is taken modulo m."""
        i %= self.m
        if i == 0 or a == 0:
            return a
        if self._table:
            return self._exp[(self._log[a] * self.q ** i) % (self.order - 1)]
        for _ in range(i):
            a = self._slow_pow(a, self.q)
        return a

    def scal(self, c, a):
        """Multiply by a base-field scalar c; constants pack as themselves."""
        return self.mul(c, a)

    # --- vector helpers
    def vadd(self, u, v):
        return [self.add(a, b) for a, b in zip(u, v)]

    def vsub(self, u, v):
        return [self.sub(a, b) for a, b in zip(u, v)]

    def vscale(self, c, u):
        return [self.mul(c, a) for a in u]

    def dot(self, u, v):
        s = 0
        for a, b in zip(u, v):
            if a and b:
                s = self.add(s, self.mul(a, b))
        return s

    def vec_mat(self, u, M):
        """Row vector u times matrix M (list of rows)."""
        n = len(M[0]) if M else 0
        out = [0] * n
        for a, row in zip(u, M):
            if a == 0:
                continue
            for j, b in enumerate(row):
                if b:
                    out[j] = self.add(out[j], self.mul(a, b))
        return out

    def random(self, rng):
        if self.order <= 1 << 62:
            return int(rng.integers(0, self.order))
        return undigits(rng.integers(0, self.q, size=self.m), self.q)

    def random_vector(self, rng, n):
        return [self.random(rng) for _ in range(n)]

    def elements(self):
        return range(self.order)

    # --- coordinates and the basis map
    def coords(self, a):
        """Power-basis coordinates of a as a list of m base-field ints."""
        return digits(a, self.q, self.m)

    def from_coords(self, cs):
        return undigits(cs, self.q)

    def to_matrix(self, v):
        """m x n base matrix whose column j expands v[j] in the field basis."""
        v = list(v)
        if not v:
            return np.zeros((self.m, 0), dtype=np.int64)
        P = np.array([self.coords(a) for a in v], dtype=np.int64).T
        from .linalg import matmul

        return matmul(self.base, self._basis_inv, P)

    def from_matrix(self, A):
        """Inverse of to_matrix."""
        A = np.asarray(A, dtype=np.int64)
        if A.ndim != 2 or A.shape[0] != self.m:
            raise ValueError("expected a matrix with %d rows, got shape %s" % (self.m, A.shape))
        from .linalg import matmul

        P = matmul(self.base, self._basis_mat, A)
        return [self.from_coords(col) for col in P.T]

    def is_base(self, a):
        """True when a lies in the base field."""
        return self.frob(a, 1) == a


def ext_to_matrix(F, v):
    return F.to_matrix(v)


def matrix_to_ext(F, A):
    return F.from_matrix(A)


def frobenius(F, a, i):
    return F.frob(a, i)


def moore_matrix(F, g, k):
    """k x n Moore matrix with rows g^[0], ..., g^[k-1]."""
    from .linalg import rank

    g = list(g)
    if k < 1:
        raise ValueError("k must be at least 1")
    if rank(F.base, F.to_matrix(g)) != len(g):
        raise ValueError("locators are linearly dependent over GF(%d)" % F.q)
    return [[F.frob(x, i) for x in g] for i in range(k)]


class LinearizedPoly:
    """A q-linearized polynomial sum_i c_i x^[i] over an extension field."""

    def __init__(self, field, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, field, i=0):
        """The monomial x^[i]."""
        return cls(field, [0] * i + [1])

    @property
    def qdeg(self):
        return len(self.coeffs) - 1

    def __repr__(self):
        return "LinearizedPoly(%s)" % (list(self.coeffs),)

    def __eq__(self, other):
        return isinstance(other, LinearizedPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, a):
        F = self.field
        s, p = 0, a
        for c in self.coeffs:
            if c and p:
                s = F.add(s, F.mul(c, p))
            p = F.frob(p, 1)
        return s

    def __add__(self, other):
        F = self.field
        a, b = list(self.coeffs), list(other.coeffs)
        n = max(len(a), len(b))
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        return LinearizedPoly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __sub__(self, other):
        F = self.field
        return self + LinearizedPoly(F, [F.neg(c) for c in other.coeffs])

    def scale(self, c):
        return LinearizedPoly(self.field, [self.field.mul(c, x) for x in self.coeffs])

    def compose(self, other):
        """(self o other)(x) = self(other(x))."""
        F = self.field
        if not self.coeffs or not other.coeffs:
            return LinearizedPoly(F, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, F.frob(b, i)))
        return LinearizedPoly(F, out)

    def __matmul__(self, other):
        return self.compose(other)


def subspace_poly(F, elems):
    """Monic linearized polynomial whose roots are the span of elems.

    Dependent elements are skipped, so the q-degree equals the dimension
    of their span.
    """
    P = LinearizedPoly.x(F)
    for a in elems:
        v = P(a)
        if v == 0:
            continue
        # (x^[1] - v^(q-1) x) o P kills a and keeps the previous roots
        w = F.pow(v, F.q - 1)
        P = LinearizedPoly(F, [F.neg(w), 1]).compose(P)
    return P


def root_space(F, P):
    """Basis of the kernel of x -> P(x) as a list of field elements."""
    from .linalg import nullspace

    images = [P(b) for b in F.basis]
    M = F.to_matrix(images)
    K = nullspace(F.base, M)
    return [F.from_matrix(col.reshape(-1, 1))[0] for col in K.T]
