"""Angle sums at marked points and the puncture element, and their flip invariance.

Run: python3 demos/angles.py
"""

import random

from mutlab.fixtures import load_fixture
from mutlab.laurent import ratfunc_eq, specialize
from mutlab.surface import angle_sum, build_genus, flip_seed, mu_element, triangulation_seed

q, T = load_fixture("hexagon")
s = triangulation_seed(T)
ones = {i: 1 for i in range(q.n_mutable + 1, q.n_vertices + 1)}
print("hexagon, frozen variables set to 1:")
for p in T.marked_points:
    print(f"  point {p}: {specialize(angle_sum(s, T, p), ones)}")

T, _ = build_genus(2)
s = triangulation_seed(T)
mu = mu_element(s, T)
print(f"\ngenus 2 puncture element: {mu}")
rng = random.Random(1)
for _ in range(5):
    k = rng.randint(1, T.n_arcs)
    s, T = flip_seed(s, T, k)
    print(f"  after flipping arc {k}: unchanged = {ratfunc_eq(mu_element(s, T), mu)}")
