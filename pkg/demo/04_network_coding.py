"""
Multi-shot network coding with lifted PUM codes
===============================================

"""

import numpy as np

from rankpum import GF, PumCode
from rankpum.network import (affine_lifted_matrix, lift_block, lifted_matrix, network_decode,
                             operator_channel, rre_decompose)
from rankpum.rank_metric import rank_distance, subspace_distance

F = GF(2, 8)
code = PumCode(F, 8, 4, 2)
rng = np.random.default_rng(4)

# lifting turns rank distance into subspace distance, times two
a, b = F.random_vector(rng, 8), F.random_vector(rng, 8)
U, V = lift_block(2, F.to_matrix(a)), lift_block(2, F.to_matrix(b))
print("rank distance %d, subspace distance %d" % (rank_distance(F, a, b), subspace_distance(U, V)))

# one shot: X = [I | C^T] goes through Y = A X + B Z
C = F.to_matrix(code.encode([F.random_vector(rng, 4)])[0])
shot = operator_channel(lifted_matrix(C), rng, error_packets=1, erased_packets=1, q=2)
d = rre_decompose(shot, F.m)
print("received %d packets: rho = %d, gamma = %d" % (shot.n_i, d.side.rho, d.side.gamma))

# a whole sequence, linear and affine
for affine in (False, True):
    info = [F.random_vector(rng, 4) for _ in range(4)]
    shots = []
    for i, c in enumerate(code.encode(info)):
        M = F.to_matrix(c)
        X = affine_lifted_matrix(M) if affine else lifted_matrix(M)
        shots.append(operator_channel(X, rng, error_packets=i % 2, erased_packets=1, q=2,
                                      affine=affine, n=8))
    res = network_decode(code, shots)
    print("%s lifting: recovered %s" % ("affine" if affine else "linear",
                                       res.success and res.info_sequence == info))
