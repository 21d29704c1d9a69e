"""
Monte Carlo comparison against a block code
===========================================

"""

from rankpum.simulate import SimulationConfig, cmd_simulate

# unconstrained channel draws, PUM(8, 4 | 2) against Gab[8, 4] per block
cfg = SimulationConfig(N=6, trials=50, seed=5, t_max=2, rho_max=1, gamma_max=1, baseline=True)
text = cmd_simulate(cfg)
print(text.splitlines()[-1])

# the same at packet level: random subspaces over the operator channel
cfg = SimulationConfig(N=4, trials=20, seed=5, level="packet", error_packets_max=1,
                       erased_packets_max=2, baseline=True)
print(cmd_simulate(cfg).splitlines()[-1])
