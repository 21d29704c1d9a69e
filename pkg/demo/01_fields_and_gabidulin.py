"""
Extension fields, rank weight and Gabidulin codes
=================================================

"""

import numpy as np

from rankpum import GF, GabidulinCode, gab_random_error, rank_weight
from rankpum.gabidulin import error_vector

# GF(2^8) with the default modulus; elements are integers 0..255
F = GF(2, 8)
a, b = 0x53, 0xCA
print("a * b =", hex(F.mul(a, b)), " a^-1 =", hex(F.inv(a)), " a^2 =", hex(F.frob(a, 1)))

# a vector over GF(2^8) is an 8 x n binary matrix; its rank is the rank weight
v = [1, 2, 3, 0]
print("matrix of v:\n", F.to_matrix(v))
print("rank weight of v:", rank_weight(F, v))

# Gab[8, 4]: minimum rank distance d = n - k + 1 = 5
code = GabidulinCode(F, F.basis[:8], 4)
rng = np.random.default_rng(1)
u = F.random_vector(rng, 4)
c = code.encode(u)
print("\n%r  d = %d" % (code, code.d))

# one full error, one row erasure and one column erasure: 2*1 + 1 + 1 < 5
err = gab_random_error(F, 8, 1, 1, 1, rng)
r = F.vadd(c, error_vector(F, err))
out = code.decode(r, err.side())
print("received rank distance:", rank_weight(F, F.vsub(r, c)))
print("decoded correctly:", out == c, " info:", code.unencode(out) == u)
