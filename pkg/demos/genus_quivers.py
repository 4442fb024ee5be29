"""Build the genus-g quivers, check their shape and count their mutation classes.

Run: python3 demos/genus_quivers.py
"""

import time

from mutlab import degree_profile, enumerate_mutation_class, strongly_connected_components
from mutlab.surface import build_genus, eulerian_cycle, phi_psi

for g in range(1, 5):
    T, q = build_genus(g)
    regular = all(d == (2, 2) for d in degree_profile(q).values())
    pp = phi_psi(T)
    print(
        f"genus {g}: {q.n_vertices} vertices, {q.n_arrows} arrows, "
        f"2-regular={regular}, strongly connected={len(strongly_connected_components(q)) == 1}, "
        f"psi cycle length {len(eulerian_cycle(pp, 0))}"
    )

for g in (1, 2):
    t0 = time.perf_counter()
    cls = enumerate_mutation_class(build_genus(g)[1])
    print(f"genus {g}: mutation class has {len(cls)} isomorphism classes ({time.perf_counter() - t0:.2f} s)")
