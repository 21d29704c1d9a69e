"""
Partial unit memory codes from one Gabidulin generator
======================================================

"""

import numpy as np

from rankpum import GF, PumCode
from rankpum.rank_metric import sum_rank_weight

F = GF(2, 8)

# low-rate PUM(8, 4 | 2): k + k1 <= n
code = PumCode(F, 8, 4, 2)
pr = code.profile
print(code, pr)
print("free rank distance:", pr.d_free)
for j in (1, 2, 3, 4):
    print("order %d: row %s  column %s  reverse column %s"
          % (j, pr.row(j), pr.column(j), pr.reverse_column(j)))
print("minimal basic encoder:", code.is_minimal_basic())

# zero-terminated encoding: N info blocks give N + 1 code blocks
rng = np.random.default_rng(2)
info = [F.random_vector(rng, 4) for _ in range(3)]
cs = code.encode(info)
print("\n%d code blocks, sum rank weight %d" % (len(cs), sum_rank_weight(F, cs)))

# every inner block lies in C_sigma and gives back its info block on its own
got, _ = code.reconstruct_info({1: cs[1]})
print("block 1 alone gives u^(1):", got[1] == info[1])

# arbitrary rate: phi overlap rows allow k + k1 - phi <= n
ar = PumCode(F, 8, 4, 3, 2)
print("\n%r  d_sigma' = %d  ell = %d" % (ar, ar.profile.d_sigma, ar.ell))
info = [F.random_vector(rng, 4) for _ in range(4)]
cs = ar.encode(info)
# one block is no longer enough; ell + 1 consecutive blocks are
one, _ = ar.reconstruct_info({2: cs[2]})
window, _ = ar.reconstruct_info({1: cs[1], 2: cs[2], 3: cs[3]})
print("u^(2) from one block:", 2 in one, "  from three blocks:", window.get(2) == info[2])
