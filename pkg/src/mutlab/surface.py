"""Ideal triangulations without self-folded triangles.

A triangulation is combinatorial data: each triangle is a triple of side
labels listed counterclockwise, and ``corners[t][c]`` names the marked point
between sides ``c`` and ``c + 1`` of triangle ``t``.  Side ``c`` therefore
runs counterclockwise from corner ``c - 1`` to corner ``c``.  Arcs are
labelled ``1..n_arcs`` and boundary segments ``n_arcs + 1..n_arcs + n_boundary``.

Adjacency quivers use the convention that sides ``(a, b, c)`` give arrows
``a -> b -> c -> a``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (
    InvalidCorner,
    InvalidGenus,
    InvalidPoint,
    InvalidSurface,
    InvalidTriangulation,
    NotFlippable,
    NotTwoRegular,
    StructureError,
)
from .laurent import LaurentForm, MultiPoly, RatFunc, sum_fractions
from .quiver import Quiver, cancel_two_cycles, degree_profile, mutate
from .seed import Seed, initial_seed, mutate_seed

__all__ = [
    "Triangulation",
    "PhiPsi",
    "flip",
    "adjacency_quiver",
    "extended_adjacency_quiver",
    "build_genus",
    "genus_triangles",
    "once_punctured_torus",
    "phi_psi",
    "eulerian_cycle",
    "angle",
    "angle_sum",
    "incident_arcs",
    "mu_element",
    "flip_seed",
    "same_mutable_part",
    "triangulation_seed",
]


def _rot(seq, r):
    r %= 3
    return tuple(seq[r:]) + tuple(seq[:r])


class Triangulation:
    """Triangles as counterclockwise side triples plus corner labels.

    Use :meth:`from_triangles` to derive the corner labels from the gluing.
    """

    __slots__ = ("n_arcs", "n_boundary", "triangles", "corners", "_slots")

    def __init__(self, n_arcs, n_boundary, triangles, corners):
        self.n_arcs = int(n_arcs)
        self.n_boundary = int(n_boundary)
        self.triangles = tuple(tuple(int(s) for s in t) for t in triangles)
        self.corners = tuple(tuple(c) for c in corners)
        self._slots = None
        self._validate()

    @classmethod
    def from_triangles(cls, n_arcs, n_boundary, triangles):
        """Build a triangulation and label marked points by gluing corners."""
        triangles = [tuple(t) for t in triangles]
        slots = _slot_map(n_arcs, n_boundary, triangles)
        parent = {(t, c): (t, c) for t in range(len(triangles)) for c in range(3)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra

        for arc in range(1, n_arcs + 1):
            (t, j), (u, i) = slots[arc]
            union((t, (j - 1) % 3), (u, i))
            union((t, j), (u, (i - 1) % 3))
        ids = {}
        corners = []
        for t in range(len(triangles)):
            row = []
            for c in range(3):
                r = find((t, c))
                if r not in ids:
                    ids[r] = len(ids) + 1
                row.append(ids[r])
            corners.append(row)
        return cls(n_arcs, n_boundary, triangles, corners)

    def _validate(self):
        if any(len(t) != 3 for t in self.triangles):
            raise InvalidTriangulation("every triangle needs three sides")
        if len(self.corners) != len(self.triangles) or any(len(c) != 3 for c in self.corners):
            raise InvalidTriangulation("one corner triple per triangle is required")
        self._slots = _slot_map(self.n_arcs, self.n_boundary, self.triangles)
        for arc in range(1, self.n_arcs + 1):
            (t, j), (u, i) = self._slots[arc]
            if self.corners[t][(j - 1) % 3] != self.corners[u][i] or (
                self.corners[t][j] != self.corners[u][(i - 1) % 3]
            ):
                raise InvalidTriangulation(f"corner labels disagree across arc {arc}")

    @property
    def m(self):
        return self.n_arcs + self.n_boundary

    @property
    def marked_points(self):
        return tuple(sorted({p for row in self.corners for p in row}, key=str))

    def is_boundary(self, s):
        return s > self.n_arcs

    def slots(self, side):
        """Positions ``(triangle, slot)`` where ``side`` occurs."""
        return self._slots[side]

    def is_once_punctured_closed(self):
        return self.n_boundary == 0 and len(self.marked_points) == 1

    def genus(self):
        """Genus of a once-punctured closed surface, from ``n = 6g - 3``."""
        if not self.is_once_punctured_closed() or (self.n_arcs + 3) % 6:
            raise InvalidSurface("not a once-punctured closed surface")
        return (self.n_arcs + 3) // 6

    def relabel_arcs(self, perm):
        """Rename arcs by the mapping ``perm`` (missing labels are fixed)."""
        tris = [tuple(perm.get(s, s) for s in t) for t in self.triangles]
        return Triangulation(self.n_arcs, self.n_boundary, tris, self.corners)

    def canonical_triangles(self):
        """Triangles with corners, each rotated to start at its smallest side, sorted."""
        out = []
        for t, c in zip(self.triangles, self.corners):
            r = t.index(min(t))
            out.append((_rot(t, r), _rot(c, r)))
        return sorted(out, key=lambda tc: (tc[0], [str(p) for p in tc[1]]))

    def same_as(self, other):
        """Equality up to the cyclic rotation and order of triangles."""
        return (
            self.n_arcs == other.n_arcs
            and self.n_boundary == other.n_boundary
            and self.canonical_triangles() == other.canonical_triangles()
        )

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash((self.n_arcs, self.n_boundary, tuple(t for t, _ in self.canonical_triangles())))

    def to_dict(self):
        return {
            "n_arcs": self.n_arcs,
            "n_boundary": self.n_boundary,
            "triangles": [list(t) for t in self.triangles],
            "corners": [list(c) for c in self.corners],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        if "corners" in d and d["corners"] is not None:
            return cls(d["n_arcs"], d["n_boundary"], d["triangles"], d["corners"])
        return cls.from_triangles(d["n_arcs"], d["n_boundary"], d["triangles"])

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return (
            f"Triangulation(n_arcs={self.n_arcs}, n_boundary={self.n_boundary}, "
            f"triangles={list(self.triangles)})"
        )


def _slot_map(n_arcs, n_boundary, triangles):
    m = n_arcs + n_boundary
    slots = {s: [] for s in range(1, m + 1)}
    for t, tri in enumerate(triangles):
        for j, s in enumerate(tri):
            if s not in slots:
                raise InvalidTriangulation(f"side label {s} outside 1..{m}")
            slots[s].append((t, j))
    for s, where in slots.items():
        want = 2 if s <= n_arcs else 1
        if len(where) != want:
            kind = "arc" if s <= n_arcs else "boundary segment"
            raise InvalidTriangulation(f"{kind} {s} occurs {len(where)} times, expected {want}")
        if want == 2 and where[0][0] == where[1][0]:
            raise InvalidTriangulation(f"arc {s} is the folded side of a self-folded triangle")
    return slots


def flip(T: Triangulation, k) -> Triangulation:
    """Replace arc ``k`` by the other diagonal of its quadrilateral.

    The new arc keeps the label ``k``.  With the triangles rotated to
    ``(k, x, y)`` and ``(k, z, w)`` the quadrilateral reads ``x, y, z, w``
    counterclockwise and the new triangles are ``(k, y, z)`` and ``(k, w, x)``.
    """
    if not (isinstance(k, int) and 1 <= k <= T.n_arcs):
        raise NotFlippable(f"{k!r} is not a mutable arc")
    (t1, j1), (t2, j2) = T.slots(k)
    if t1 == t2:
        raise NotFlippable(f"arc {k} lies twice in one triangle")
    _, x, y = _rot(T.triangles[t1], j1)
    B, C, A = _rot(T.corners[t1], j1)
    _, z, w = _rot(T.triangles[t2], j2)
    _, D, _ = _rot(T.corners[t2], j2)
    new1, new2 = (k, y, z), (k, w, x)
    if len(set(new1)) < 3 or len(set(new2)) < 3:
        raise NotFlippable(f"flipping arc {k} would create a self-folded triangle")
    tris = list(T.triangles)
    cors = list(T.corners)
    tris[t1], cors[t1] = new1, (C, A, D)
    tris[t2], cors[t2] = new2, (D, B, C)
    try:
        return Triangulation(T.n_arcs, T.n_boundary, tris, cors)
    except InvalidTriangulation as exc:
        raise NotFlippable(str(exc)) from exc


def _triangle_arrows(T, keep):
    arrows = []
    for a, b, c in T.triangles:
        for s, t in ((a, b), (b, c), (c, a)):
            if keep(s) and keep(t):
                arrows.append((s, t))
    return arrows


def adjacency_quiver(T: Triangulation) -> Quiver:
    """Quiver on the arcs; arrows listed triangle by triangle before cancellation."""
    arrows = _triangle_arrows(T, lambda s: s <= T.n_arcs)
    return Quiver(T.n_arcs, 0, cancel_two_cycles(arrows))


def extended_adjacency_quiver(T: Triangulation) -> Quiver:
    """Adjacency quiver with boundary segments as frozen vertices."""
    arrows = _triangle_arrows(T, lambda s: True)
    return Quiver(T.n_arcs, T.n_boundary, cancel_two_cycles(arrows))


def same_mutable_part(q1: Quiver, q2: Quiver) -> bool:
    """Equal labelled quivers after discarding arrows between frozen vertices."""
    if (q1.n_mutable, q1.n_frozen) != (q2.n_mutable, q2.n_frozen):
        return False
    return q1._b[: q1.n_mutable] == q2._b[: q2.n_mutable]


def genus_triangles(g):
    """Side triples of the standard triangulation of the once-punctured genus-g surface."""
    if not isinstance(g, int) or g < 1:
        raise InvalidGenus(f"genus must be a positive integer, got {g!r}")
    if g == 1:
        return [(1, 2, 3), (1, 2, 3)]
    G = 2 * g

    def md(i):
        return (i - 1) % G + 1

    tris = []
    for i in range(1, G + 1):
        if i % 2:
            tris.append((G + i, md(i + 1), i))
        else:
            tris.append((G + i, i, md(i + 1)))
    tris.append((G + 1, G + 2, 4 * g + 1))
    for i in range(2, G - 2):
        tris.append((4 * g + i - 1, G + i + 1, 4 * g + i))
    tris.append((6 * g - 3, 4 * g - 1, 4 * g))
    return tris


def build_genus(g):
    """Triangulation and adjacency quiver of the once-punctured closed genus-g surface.

    For ``g >= 2`` the surface is a ``4g``-gon with the side pattern
    ``a1 b1 a1^-1 b1^-1 ...``: arcs ``1..2g`` are its sides, ``2g+1..4g``
    cut off the corners and ``4g+1..6g-3`` fan the inner ``2g``-gon.
    ``g == 1`` gives the once-punctured torus and the Markov quiver.
    """
    tris = genus_triangles(g)
    n = 6 * g - 3
    T = Triangulation.from_triangles(n, 0, tris)
    if len(T.marked_points) != 1:
        raise StructureError("genus construction does not close up to one puncture")
    return T, adjacency_quiver(T)


def once_punctured_torus():
    return build_genus(1)[0]


@dataclass(frozen=True)
class PhiPsi:
    """The maps phi and psi on arrow ids of a 2-regular adjacency quiver."""

    quiver: Quiver
    phi: tuple
    psi: tuple

    def orbits(self, which="phi"):
        f = self.phi if which == "phi" else self.psi
        seen = set()
        out = []
        for a in range(len(f)):
            if a in seen:
                continue
            orb = []
            b = a
            while b not in seen:
                seen.add(b)
                orb.append(b)
                b = f[b]
            out.append(tuple(orb))
        return out


def phi_psi(T: Triangulation) -> PhiPsi:
    """phi(a) is the next arrow of a's triangle, psi(a) the other arrow leaving head(a).

    Raises
    ------
    NotTwoRegular
        If the surface has boundary or some vertex does not have exactly two
        incoming and two outgoing arrows.
    """
    if T.n_boundary:
        raise NotTwoRegular("phi and psi need a closed surface")
    q = adjacency_quiver(T)
    if q.n_arrows != 3 * len(T.triangles) or any(
        d != (2, 2) for d in degree_profile(q).values()
    ):
        raise NotTwoRegular("adjacency quiver is not 2-regular")
    arrows = q.arrows
    phi = tuple(3 * (a // 3) + (a % 3 + 1) % 3 for a in range(len(arrows)))
    starting = {}
    for a in arrows:
        starting.setdefault(a.src, []).append(a.id)
    psi = []
    for a in arrows:
        nxt = [b for b in starting[a.tgt] if b != phi[a.id]]
        psi.append(nxt[0])
    pp = PhiPsi(q, phi, tuple(psi))
    for a in range(len(arrows)):
        if phi[phi[phi[a]]] != a or arrows[phi[a]].src != arrows[a].tgt:
            raise StructureError("phi is not of order three on triangle cycles")
    return pp


def eulerian_cycle(pp: PhiPsi, alpha: int):
    """The closed walk ``alpha, psi(alpha), psi^2(alpha), ...`` through every arrow once."""
    arrows = pp.quiver.arrows
    n = len(arrows)
    if not 0 <= alpha < n:
        raise StructureError(f"no arrow with id {alpha}")
    seq = [alpha]
    for _ in range(n - 1):
        seq.append(pp.psi[seq[-1]])
    if pp.psi[seq[-1]] != alpha or len(set(seq)) != n:
        raise StructureError("psi does not generate a single orbit through all arrows")
    for a, b in zip(seq, seq[1:] + seq[:1]):
        if arrows[a].tgt != arrows[b].src:
            raise StructureError("psi-walk is not a path")
    return seq


# angles


def _values(s: Seed, T: Triangulation):
    if s.m != T.m:
        raise InvalidCorner(f"seed has {s.m} variables, triangulation has {T.m} sides")
    return s.vars


def angle(s: Seed, T: Triangulation, t, c) -> RatFunc:
    """``x_k / (x_i x_j)`` for corner ``c`` of triangle ``t`` (sides ``i, j``, opposite ``k``)."""
    vals = _values(s, T)
    if not (0 <= t < len(T.triangles) and 0 <= c < 3):
        raise InvalidCorner(f"no corner ({t}, {c})")
    tri = T.triangles[t]
    i, j, k = tri[c], tri[(c + 1) % 3], tri[(c + 2) % 3]
    return vals[k - 1] / (vals[i - 1] * vals[j - 1])


def _corner_walk(T: Triangulation, p):
    at_p = [(t, c) for t in range(len(T.triangles)) for c in range(3) if T.corners[t][c] == p]
    if not at_p:
        raise InvalidPoint(f"unknown marked point {p!r}")
    start = at_p[0]
    boundary = False
    for t, c in at_p:
        if T.is_boundary(T.triangles[t][(c + 1) % 3]):
            start, boundary = (t, c), True
            break
    walk = [start]
    t, c = start
    while True:
        side = T.triangles[t][c]
        if T.is_boundary(side):
            break
        (u, i), (v, j) = T.slots(side)
        t, c = ((v, j) if (u, i) == (t, c) else (u, i))
        c = (c - 1) % 3
        if (t, c) == start:
            break
        walk.append((t, c))
    if len(walk) != len(at_p):
        raise StructureError(f"corners at {p!r} do not form a single cycle or chain")
    return walk, boundary


def incident_arcs(T: Triangulation, p):
    """Sides at ``p`` in counterclockwise order, ``i_1 .. i_r``.

    At a puncture the sequence is cyclic (``i_r`` is followed by ``i_1``); at
    a boundary point ``i_1`` and ``i_r`` are boundary segments, which may
    coincide.
    """
    walk, boundary = _corner_walk(T, p)
    seq = [T.triangles[t][(c + 1) % 3] for t, c in walk]
    if boundary:
        t, c = walk[-1]
        seq.append(T.triangles[t][c])
    return seq, boundary


def angle_sum(s: Seed, T: Triangulation, p) -> RatFunc:
    """Sum of the angles between consecutive sides at the marked point ``p``."""
    vals = _values(s, T)
    walk, _ = _corner_walk(T, p)
    terms = []
    for t, c in walk:
        tri = T.triangles[t]
        terms.append(_angle_term(vals, tri[c], tri[(c + 1) % 3], tri[(c + 2) % 3]))
    return sum_fractions(terms, T.m)


def _angle_term(vals, i, j, k):
    fi, fj, fk = vals[i - 1], vals[j - 1], vals[k - 1]
    num = fk.numerator * fi.denominator * fj.denominator
    return num, [fk.denominator, fi.numerator, fj.numerator]


def mu_element(s: Seed, T: Triangulation) -> RatFunc:
    """Sum over triangles ``{i, j, k}`` of ``(x_i^2 + x_j^2 + x_k^2) / (x_i x_j x_k)``.

    Raises
    ------
    InvalidSurface
        Unless ``T`` triangulates a once-punctured closed surface.
    """
    if not T.is_once_punctured_closed():
        raise InvalidSurface("mu is defined for once-punctured closed surfaces")
    vals = _values(s, T)
    terms = []
    for a, b, c in T.triangles:
        for i, j, k in ((a, b, c), (b, c, a), (c, a, b)):
            terms.append(_angle_term(vals, i, j, k))
    return sum_fractions(terms, T.m)


def flip_seed(s: Seed, T: Triangulation, k):
    """Mutate the seed at ``k`` and flip ``T`` at ``k`` together.

    The seed quiver must agree with the extended adjacency quiver of ``T``
    on every arrow touching a mutable vertex; arrows between two frozen
    vertices play no role in exchange relations and are taken from the
    flipped triangulation.
    """
    q = extended_adjacency_quiver(T)
    if not same_mutable_part(s.quiver, q):
        raise StructureError("seed quiver does not match the triangulation")
    T2 = flip(T, k)
    s2 = mutate_seed(s, k)
    q2 = extended_adjacency_quiver(T2)
    if not same_mutable_part(s2.quiver, q2):
        raise StructureError("flip and mutation disagree")
    return Seed(q2, s2._vals), T2


def triangulation_seed(T: Triangulation) -> Seed:
    """Initial seed on the extended adjacency quiver of ``T``."""
    return initial_seed(extended_adjacency_quiver(T))
