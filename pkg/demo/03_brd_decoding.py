"""
Bounded row distance decoding
=============================

"""

import numpy as np

from rankpum import GF, PumCode, ReceivedBlock, brd_condition, brd_decode, gab_random_error
from rankpum.gabidulin import error_vector
from rankpum.simulate import cmd_table3

F = GF(2, 8)
code = PumCode(F, 8, 4, 2)
rng = np.random.default_rng(3)
info = [F.random_vector(rng, 4) for _ in range(4)]
cs = code.encode(info)

# (t, rho, gamma) per block; the first block alone is beyond a block code
counts = [(2, 1, 0), (0, 0, 0), (1, 0, 1), (0, 0, 0), (1, 1, 0)]
print("window condition holds:", brd_condition(code.profile, counts))

rx = []
for c, (t, r, g) in zip(cs, counts):
    err = gab_random_error(F, 8, t, r, g, rng)
    rx.append(ReceivedBlock(tuple(F.vadd(c, error_vector(F, err))), err.side()))

res = brd_decode(code, rx, trace=True)
print("recovered:", res.success and res.info_sequence == info)
print("path metric:", res.metric, " BMD calls per block:", res.bmd_calls)
print("\n".join(res.trace[:8]), "\n...")

# the worked seven-shot example, with the block-code baseline
print()
print(cmd_table3())
