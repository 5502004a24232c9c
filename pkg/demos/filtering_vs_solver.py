# Singular Darboux chains remove levels instead of just shifting them.
# The prediction comes from exact node analysis of the intermediate
# Wronskians; the Numerov shooting solver confirms it on (0, pi/2).
import math

import numpy as np

from darboux_wronskian import SolverConfig, gm_seed_selection, predict_filtered_spectrum, solve_dirichlet
from darboux_wronskian.chain import Family, PotentialParams, filtered_interval
from darboux_wronskian.spectral import check_isospectral, node_positions

cfg = SolverConfig(grid_points=20000, interval=(0.0, math.pi / 2), eigen_count=4)

print(" m  n   predicted              Numerov                                    max err")
for m in range(1, 5):
    for n in range(1, m + 1):
        chain = gm_seed_selection(m, n)
        predicted = [e for e, _ in predict_filtered_spectrum(chain, m + n + 10)][:4]
        res = solve_dirichlet(PotentialParams(Family.TDPT, m, n).function(), cfg)
        err = max(abs(a - b) for a, b in zip(res.eigenvalues, predicted))
        print(f"{m:2d} {n:2d}   {str(predicted):22s} {[round(e, 6) for e in res.eigenvalues]}  {err:.1e}")

# the working interval shrinks to (0, pi/2) once a cos factor appears
print("\nworking interval for (2,1):", filtered_interval(gm_seed_selection(2, 1)))

# one step from the free box deletes its ground level
box = (0.0, math.pi)
rep = check_isospectral(lambda x: 0 * x, lambda x: 2 / np.sin(x) ** 2, 0.0,
                        SolverConfig(interval=box, eigen_count=4))
print("box levels above the ground state vs 2/sin^2:", [(round(a, 6), round(b, 6)) for a, b in rep.pairs])

# the first excited state of p(p+1)/sin^2 has its only node at pi/2
for p in (1, 2, 3):
    nodes = node_positions(lambda x, p=p: p * (p + 1) / np.sin(x) ** 2, 1, SolverConfig(interval=box, eigen_count=2))
    print(f"p={p}: node at {nodes[0]:.8f} (pi/2 = {math.pi / 2:.8f})")
