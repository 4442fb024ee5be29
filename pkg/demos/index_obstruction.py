"""The index coefficient sum is constant on 2-regular quivers, so -1 cannot reach +1.

Run: python3 demos/index_obstruction.py
"""

import random

from mutlab import path_quiver
from mutlab.index import IndexVector, coeff_sum_walk, random_walk, sigma_obstruction
from mutlab.surface import build_genus

for g in (1, 2, 3):
    q = build_genus(g)[1]
    n = q.n_mutable
    sums = coeff_sum_walk(IndexVector((-1,) * n, q), random_walk(q, 1000, random.Random(g)))
    r = sigma_obstruction(q)
    print(f"genus {g}: sums seen over 1000 mutations {sorted(set(sums))}; "
          f"start {r.start_sum}, target {r.target_sum}: {r.verdict}")

print("A2, not 2-regular:", coeff_sum_walk(IndexVector((1, 0), path_quiver(2)), [1]))
