"""Follow a random mutation walk on the genus-2 seed and watch the cluster variables grow.

Every variable stays a Laurent polynomial of total degree 1 in the initial
cluster; the number of terms grows quickly, which is why long walks are costly.

Run: python3 demos/laurent_walk.py
"""

import random
import time

from mutlab.laurent import homogeneous_degree
from mutlab.seed import initial_seed, mutate_seed
from mutlab.surface import build_genus

q = build_genus(2)[1]
s = initial_seed(q)
rng = random.Random(0)
t0 = time.perf_counter()
for step in range(1, 26):
    k = rng.randint(1, q.n_mutable)
    s = mutate_seed(s, k)
    s.laurent_forms()
    degrees = {homogeneous_degree(v) for v in s.vars}
    terms = max(len(v.numerator) for v in s.vars)
    print(f"step {step:2d}: mutate at {k}, degrees {degrees}, largest numerator {terms} terms, "
          f"{time.perf_counter() - t0:.2f} s")
