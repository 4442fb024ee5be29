"""Potentials: finite integer combinations of cycles up to rotation."""

from __future__ import annotations

from .errors import InvalidQuiver, StructureError
from .quiver import Quiver
from .surface import Triangulation, eulerian_cycle, phi_psi

__all__ = [
    "CyclicWord",
    "Potential",
    "build_W0",
    "build_W1",
    "cyclic_derivative",
    "restrict",
    "simple_cycles",
    "format_paths",
]


class CyclicWord(tuple):
    """Arrow ids of a cycle, rotated to the lexicographically smallest rotation."""

    def __new__(cls, ids):
        ids = tuple(int(a) for a in ids)
        if not ids:
            raise ValueError("a cyclic word must be non-empty")
        best = min(ids[i:] + ids[:i] for i in range(len(ids)))
        return super().__new__(cls, best)

    def is_cycle_in(self, q: Quiver) -> bool:
        arrows = q.arrows
        if any(not 0 <= a < len(arrows) for a in self):
            return False
        return all(
            arrows[a].tgt == arrows[b].src for a, b in zip(self, self[1:] + self[:1])
        )

    def vertices(self, q: Quiver):
        arrows = q.arrows
        return {v for a in self for v in (arrows[a].src, arrows[a].tgt)}


class Potential:
    """A map from cyclic words to non-zero integers on an ambient quiver.

    Words are stored in canonical rotation, so equality of potentials is
    equality of these maps.
    """

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms=None):
        self.quiver = quiver
        clean = {}
        for word, c in (terms or {}).items():
            w = CyclicWord(word)
            if not w.is_cycle_in(quiver):
                raise StructureError(f"{list(word)} is not a cycle in the quiver")
            c = clean.get(w, 0) + int(c)
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        self.terms = clean

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Potential):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __add__(self, other):
        if other.quiver != self.quiver:
            raise InvalidQuiver("potentials live on different quivers")
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return Potential(self.quiver, t)

    def __neg__(self):
        return Potential(self.quiver, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        if not self.terms:
            return "0"
        lines = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            lines.append(f"{c:+d} ({' '.join(str(a) for a in w)})")
        return "\n".join(lines)

    def __repr__(self):
        return f"Potential({len(self.terms)} terms)"

    def to_dict(self):
        return {
            "quiver": self.quiver.to_dict(),
            "terms": [{"coeff": c, "cycle": list(w)} for w, c in sorted(self.terms.items())],
        }


def build_W0(T: Triangulation) -> Potential:
    """Sum of the triangle cycles ``a phi(a) phi^2(a)``, one per phi-orbit."""
    pp = phi_psi(T)
    return Potential(pp.quiver, {orb: 1 for orb in pp.orbits("phi")})


def build_W1(T: Triangulation, beta: int = 0) -> Potential:
    """``W0`` minus the psi-cycle through the arrow ``beta``."""
    pp = phi_psi(T)
    w = dict.fromkeys(pp.orbits("phi"), 1)
    return Potential(pp.quiver, w) - Potential(pp.quiver, {tuple(eulerian_cycle(pp, beta)): 1})


def cyclic_derivative(W: Potential, alpha: int):
    """``d_alpha W`` as a map ``path (tuple of arrow ids) -> coefficient``.

    Each occurrence of ``alpha`` in a word contributes the path that follows
    it around the cycle.
    """
    out = {}
    for w, c in W.terms.items():
        for i, a in enumerate(w):
            if a == alpha:
                path = w[i + 1:] + w[:i]
                out[path] = out.get(path, 0) + c
    return {p: c for p, c in out.items() if c}


def format_paths(paths):
    if not paths:
        return "0"
    return " ".join(
        f"{c:+d}*({' '.join(map(str, p))})" for p, c in sorted(paths.items(), key=lambda pc: (len(pc[0]), pc[0]))
    )


def restrict(W: Potential, vertices) -> Potential:
    """Terms of ``W`` whose arrows all lie in the full subquiver on ``vertices``."""
    S = set(vertices)
    return Potential(
        W.quiver, {w: c for w, c in W.terms.items() if w.vertices(W.quiver) <= S}
    )


def simple_cycles(q: Quiver, max_length=None):
    """All cycles through pairwise distinct vertices, as cyclic words of arrow ids.

    Parallel arrows give distinct words.
    """
    out_arrows = {v: [] for v in q.vertices}
    for a in q.arrows:
        out_arrows[a.src].append(a)
    found = set()
    for s in q.vertices:
        stack = [(s, [], {s})]
        while stack:
            v, path, seen = stack.pop()
            if max_length is not None and len(path) >= max_length:
                continue
            for a in out_arrows[v]:
                if a.tgt == s:
                    found.add(CyclicWord(path + [a.id]))
                elif a.tgt > s and a.tgt not in seen:
                    stack.append((a.tgt, path + [a.id], seen | {a.tgt}))
    return sorted(found, key=lambda w: (len(w), w))
