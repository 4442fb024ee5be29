"""Decide membership in the classes P and P' and replay the witnesses.

Run: python3 demos/class_p.py
"""

from mutlab import markov_quiver, path_quiver, triangular_extension
from mutlab.class_p import is_in_P, is_in_P_prime, replay_witness, top_split
from mutlab.fixtures import load_fixture
from mutlab.surface import build_genus

examples = {
    "A4 path": path_quiver(4),
    "Markov": markov_quiver(),
    "genus 2": build_genus(2)[1],
    "Q11 (no boundary)": load_fixture("q11")[0].induced([1, 2, 3, 4]),
}
e = load_fixture("q11")[0].unfrozen()
examples["two glued extended Q11"] = triangular_extension(e, e, [(5, 5)])

for name, q in examples.items():
    v, vp = is_in_P(q), is_in_P_prime(q)
    line = f"{name}: P={v.answer}, P'={vp.answer} ({v.members_scanned} members scanned)"
    if v.is_yes:
        _, a, b, bridging = top_split(q, v.witness)
        line += f"; witness replays={replay_witness(q, v.witness)}, top cut {a} | {b} via {bridging}"
    print(line)
