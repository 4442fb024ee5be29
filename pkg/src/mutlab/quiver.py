"""Quivers (finite multidigraphs without loops or 2-cycles) and their mutation.

Vertices are labelled ``1..m``; ``1..n_mutable`` are mutable and the
remaining ``n_frozen`` are frozen.  Arrows carry implicit ids given by their
position in :attr:`Quiver.arrows`.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable, NamedTuple

import numpy as np

from .canonical import canonical_form, encode_key
from .errors import CapExceeded, InvalidExtension, InvalidQuiver, InvalidVertex

__all__ = [
    "Arrow",
    "Quiver",
    "MutationClass",
    "mutate",
    "mutate_matrix",
    "canonical_key",
    "canonical_labelling",
    "is_isomorphic",
    "enumerate_mutation_class",
    "iter_mutation_class",
    "degree_profile",
    "triangular_extension",
    "strongly_connected_components",
    "condensation_cuts",
    "iter_condensation_cuts",
    "cancel_two_cycles",
    "markov_quiver",
    "path_quiver",
    "cycle_quiver",
]


class Arrow(NamedTuple):
    id: int
    src: int
    tgt: int


def cancel_two_cycles(arrows):
    """Drop opposite pairs ``i->j``, ``j->i`` until no 2-cycle is left.

    The earliest-listed arrows of each pair are removed first; the relative
    order of the survivors is kept.
    """
    arrows = list(arrows)
    count = {}
    for s, t in arrows:
        count[(s, t)] = count.get((s, t), 0) + 1
    drop = {}
    for (s, t), c in count.items():
        if s < t and (t, s) in count:
            r = min(c, count[(t, s)])
            drop[(s, t)] = r
            drop[(t, s)] = r
    out = []
    for s, t in arrows:
        if drop.get((s, t), 0):
            drop[(s, t)] -= 1
            continue
        out.append((s, t))
    return out


class Quiver:
    """An ice quiver.

    Parameters
    ----------
    n_mutable : int
        Number of mutable vertices, labelled ``1..n_mutable``.
    n_frozen : int
        Number of frozen vertices, labelled after the mutable ones.
    arrows : iterable of (src, tgt)
        Arrows in id order.  Loops and 2-cycles are rejected.

    Two quivers compare equal when they have the same vertex sets and the
    same arrow multiplicities between every ordered pair; arrow ids are not
    part of equality.
    """

    __slots__ = ("n_mutable", "n_frozen", "_arrow_list", "_b", "_key")

    def __init__(self, n_mutable: int, n_frozen: int = 0, arrows: Iterable = ()):
        if n_mutable < 0 or n_frozen < 0:
            raise InvalidQuiver("vertex counts must be non-negative")
        m = n_mutable + n_frozen
        arrows = tuple((int(s), int(t)) for s, t in arrows)
        b = [[0] * m for _ in range(m)]
        for s, t in arrows:
            if not (1 <= s <= m and 1 <= t <= m):
                raise InvalidQuiver(f"arrow {s}->{t} has an endpoint outside 1..{m}")
            if s == t:
                raise InvalidQuiver(f"loop at vertex {s}")
            if b[s - 1][t - 1] < 0:
                raise InvalidQuiver(f"2-cycle between {s} and {t}")
            b[s - 1][t - 1] += 1
            b[t - 1][s - 1] -= 1
        self.n_mutable = n_mutable
        self.n_frozen = n_frozen
        self._arrow_list = arrows
        self._b = tuple(tuple(r) for r in b)
        self._key = None

    @classmethod
    def from_matrix(cls, b, n_mutable=None):
        """Build a quiver from a skew-symmetric integer matrix.

        Arrows are listed sorted by ``(src, tgt)``.
        """
        b = [list(map(int, row)) for row in np.asarray(b, dtype=object).tolist()]
        m = len(b)
        if n_mutable is None:
            n_mutable = m
        arrows = []
        for i in range(m):
            if b[i][i]:
                raise InvalidQuiver("diagonal entries must vanish")
            for j in range(m):
                if b[i][j] != -b[j][i]:
                    raise InvalidQuiver("matrix is not skew-symmetric")
                if b[i][j] > 0:
                    arrows.extend([(i + 1, j + 1)] * b[i][j])
        return cls(n_mutable, m - n_mutable, arrows)

    @classmethod
    def _from_rows(cls, rows, n_mutable):
        # trusted fast path: rows already skew-symmetric
        m = len(rows)
        q = cls.__new__(cls)
        q.n_mutable = n_mutable
        q.n_frozen = m - n_mutable
        q._b = tuple(tuple(r) for r in rows)
        q._arrow_list = None  # built on demand; multiplicities can be huge
        q._key = None
        return q

    @property
    def _arrows(self):
        if self._arrow_list is None:
            m = len(self._b)
            self._arrow_list = tuple(
                (i + 1, j + 1)
                for i in range(m)
                for j in range(m)
                for _ in range(max(self._b[i][j], 0))
            )
        return self._arrow_list

    @property
    def n_vertices(self) -> int:
        return self.n_mutable + self.n_frozen

    @property
    def vertices(self):
        return range(1, self.n_vertices + 1)

    @property
    def mutable_vertices(self):
        return range(1, self.n_mutable + 1)

    @property
    def arrows(self):
        return tuple(Arrow(i, s, t) for i, (s, t) in enumerate(self._arrows))

    @property
    def n_arrows(self) -> int:
        if self._arrow_list is not None:
            return len(self._arrow_list)
        return sum(x for row in self._b for x in row if x > 0)

    def is_frozen(self, v: int) -> bool:
        return v > self.n_mutable

    def exchange_matrix(self) -> np.ndarray:
        """Skew-symmetric matrix ``b[i][j] = #(i->j) - #(j->i)`` (0-based)."""
        return np.array(self._b, dtype=np.int64).reshape(self.n_vertices, self.n_vertices)

    def multiplicity(self, i: int, j: int) -> int:
        """Number of arrows ``i -> j``."""
        return max(self._b[i - 1][j - 1], 0)

    def out_neighbors(self, v):
        return {j + 1: w for j, w in enumerate(self._b[v - 1]) if w > 0}

    def in_neighbors(self, v):
        return {j + 1: -w for j, w in enumerate(self._b[v - 1]) if w < 0}

    def unfrozen(self) -> "Quiver":
        """The same quiver with every vertex declared mutable."""
        return Quiver._from_rows(self._b, self.n_vertices)

    def induced(self, vertices) -> "Quiver":
        """Full subquiver on ``vertices``, relabelled ``1..len`` in the given order.

        Mutable vertices must precede frozen ones in ``vertices``.
        """
        idx = [v - 1 for v in vertices]
        nm = sum(1 for v in vertices if v <= self.n_mutable)
        if any(v > self.n_mutable for v in vertices[:nm]):
            raise InvalidVertex("mutable vertices must come first")
        rows = [[self._b[i][j] for j in idx] for i in idx]
        return Quiver._from_rows(rows, nm)

    def relabel(self, perm) -> "Quiver":
        """Rename vertex ``v`` to ``perm[v]``; frozen vertices must stay frozen."""
        if sorted(perm[v] for v in self.vertices) != list(self.vertices):
            raise InvalidVertex("relabelling is not a bijection")
        for v in self.vertices:
            if self.is_frozen(v) != (perm[v] > self.n_mutable):
                raise InvalidVertex("relabelling must preserve the frozen subset")
        if self._arrow_list is not None:
            return Quiver(self.n_mutable, self.n_frozen, [(perm[s], perm[t]) for s, t in self._arrow_list])
        m = self.n_vertices
        rows = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                rows[perm[i + 1] - 1][perm[j + 1] - 1] = self._b[i][j]
        return Quiver._from_rows(rows, self.n_mutable)

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.n_mutable == other.n_mutable and self._b == other._b

    def __hash__(self):
        return hash((self.n_mutable, self._b))

    def __repr__(self):
        arrows = ", ".join(f"{s}->{t}" for s, t in self._arrows)
        return f"Quiver(n_mutable={self.n_mutable}, n_frozen={self.n_frozen}, [{arrows}])"

    # serialisation

    def to_dict(self):
        return {
            "n_mutable": self.n_mutable,
            "n_frozen": self.n_frozen,
            "arrows": [[s, t] for s, t in self._arrows],
        }

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(int(data["n_mutable"]), int(data.get("n_frozen", 0)), data["arrows"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidQuiver(f"malformed quiver JSON: {exc}") from exc

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name="Q") -> str:
        """Graphviz source; frozen vertices are boxes, one edge per arrow."""
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            shape = "box" if self.is_frozen(v) else "circle"
            lines.append(f'  {v} [shape={shape}, label="{v}"];')
        for s, t in self._arrows:
            lines.append(f"  {s} -> {t};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def mutate_matrix(b, k, n_mutable):
    """Matrix mutation at 0-based ``k``; frozen-frozen entries are left alone."""
    m = len(b)
    col = [b[i][k] for i in range(m)]
    rows = [list(r) for r in b]
    ins = [i for i in range(m) if col[i] > 0]
    outs = [j for j in range(m) if col[j] < 0]
    for i in ins:
        for j in outs:
            if i >= n_mutable and j >= n_mutable:
                continue
            # r arrows i->k and s arrows k->j create r*s arrows i->j
            w = col[i] * (-col[j])
            rows[i][j] += w
            rows[j][i] -= w
    for i in range(m):
        rows[i][k] = -rows[i][k]
        rows[k][i] = -rows[k][i]
    return rows


def mutate(q: Quiver, k: int) -> Quiver:
    """Mutate ``q`` at the mutable vertex ``k``.

    Composite arrows ``i -> j`` are added for every path ``i -> k -> j``,
    arrows at ``k`` are reversed and opposite pairs cancel.  The result lists
    its arrows sorted by ``(src, tgt)``.

    Examples
    --------
    >>> mutate(Quiver(2, 0, [(1, 2)]), 1).arrows
    (Arrow(id=0, src=2, tgt=1),)
    """
    if not (isinstance(k, int) and 1 <= k <= q.n_mutable):
        raise InvalidVertex(f"cannot mutate at {k}: mutable vertices are 1..{q.n_mutable}")
    return Quiver._from_rows(mutate_matrix(q._b, k - 1, q.n_mutable), q.n_mutable)


def canonical_labelling(q: Quiver):
    """Return ``(key, order)``; ``order[i]`` is the vertex at canonical position ``i+1``."""
    code, order = canonical_form(q._b, q.n_mutable)
    return encode_key(code), [v + 1 for v in order]


def canonical_key(q: Quiver) -> bytes:
    """Bytes that agree exactly for isomorphic quivers (frozen set preserved)."""
    if q._key is None:
        q._key = canonical_labelling(q)[0]
    return q._key


def is_isomorphic(q1: Quiver, q2: Quiver) -> bool:
    if q1.n_mutable != q2.n_mutable or q1.n_frozen != q2.n_frozen:
        return False
    if q1.n_arrows != q2.n_arrows:
        return False
    return canonical_key(q1) == canonical_key(q2)


class MutationClass:
    """Result of :func:`enumerate_mutation_class`.

    ``keys`` lists canonical keys in discovery order; ``representatives`` maps
    each key to the labelled quiver reached first, and ``paths`` to the
    mutation sequence that reaches it from the start quiver.
    """

    def __init__(self, start, keys, representatives, paths):
        self.start = start
        self.keys = keys
        self.representatives = representatives
        self.paths = paths

    def __len__(self):
        return len(self.keys)

    def __iter__(self):
        return (self.representatives[k] for k in self.keys)

    def __contains__(self, q):
        return canonical_key(q) in self.representatives


def iter_mutation_class(q: Quiver):
    """Breadth-first walk over the mutation class, yielding ``(key, quiver, path)``.

    Each isomorphism class is yielded once; the generator never terminates for
    mutation-infinite quivers, so callers impose their own cap.
    """
    n = q.n_mutable
    code, _ = canonical_form(q._b, n)
    seen = {code}
    queue = deque([(q._b, ())])
    yield encode_key(code), q, ()
    while queue:
        b, path = queue.popleft()
        for k in range(n):
            if path and path[-1] == k + 1:
                continue
            nb = mutate_matrix(b, k, n)
            c, _ = canonical_form(nb, n)
            if c in seen:
                continue
            seen.add(c)
            p = path + (k + 1,)
            queue.append((nb, p))
            yield encode_key(c), Quiver._from_rows(nb, n), p


def enumerate_mutation_class(q: Quiver, cap: int = 10**6) -> MutationClass:
    """All quivers mutation-equivalent to ``q``, up to isomorphism.

    Raises
    ------
    CapExceeded
        If more than ``cap`` isomorphism classes are found; ``partial`` holds
        what was collected so far.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    keys, reps, paths = [], {}, {}
    for key, rep, path in iter_mutation_class(q):
        if len(keys) >= cap:
            raise CapExceeded(cap, len(keys) + 1, MutationClass(q, keys, reps, paths))
        keys.append(key)
        reps[key] = rep
        paths[key] = path
    return MutationClass(q, keys, reps, paths)


def degree_profile(q: Quiver):
    """Map each vertex to ``(in_degree, out_degree)``, counting multiplicities."""
    b = q._b
    return {
        v: (sum(-x for x in b[v - 1] if x < 0), sum(x for x in b[v - 1] if x > 0))
        for v in q.vertices
    }


def triangular_extension(a: Quiver, b: Quiver, new_arrows=()) -> Quiver:
    """Disjoint union of ``a`` and ``b`` plus arrows from ``a`` into ``b``.

    ``a`` keeps labels ``1..|a|``, ``b`` is shifted to ``|a|+1..|a|+|b|``.
    ``new_arrows`` use the original labels: ``(vertex of a, vertex of b)``.
    Frozen vertices are not supported here; both inputs are treated as
    unfrozen.
    """
    na, nb = a.n_vertices, b.n_vertices
    arrows = list(a._arrows) + [(s + na, t + na) for s, t in b._arrows]
    for s, t in new_arrows:
        if not (1 <= s <= na) or not (1 <= t <= nb):
            raise InvalidExtension(f"new arrow {s}->{t} must go from A (1..{na}) to B (1..{nb})")
        arrows.append((s, t + na))
    return Quiver(na + nb, 0, arrows)


def strongly_connected_components(q: Quiver):
    """Tarjan's algorithm (iterative); components in reverse topological order."""
    m = q.n_vertices
    succ = [[j for j in range(m) if q._b[i][j] > 0] for i in range(m)]
    index = [None] * m
    low = [0] * m
    on_stack = [False] * m
    stack, comps = [], []
    counter = 0
    for root in range(m):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            for p in range(pos, len(succ[v])):
                w = succ[v][p]
                if index[w] is None:
                    work.append((v, p + 1))
                    work.append((w, 0))
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w + 1)
                        if w == v:
                            break
                    comps.append(sorted(comp))
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
    return comps


def iter_condensation_cuts(q: Quiver, max_side=None):
    """Yield every ``(A, B)`` with ``A, B`` non-empty and no arrow from ``B`` to ``A``.

    ``A`` ranges over the predecessor-closed unions of strongly connected
    components.  With ``max_side=1`` only cuts where one side is a single
    vertex are produced.
    """
    if max_side == 1:
        yield from _point_cuts(q)
        return
    comps = strongly_connected_components(q)[::-1]  # topological order
    where = {}
    for c, comp in enumerate(comps):
        for v in comp:
            where[v] = c
    preds = [set() for _ in comps]
    for s in q.vertices:
        for t in q.vertices:
            if q._b[s - 1][t - 1] > 0 and where[s] != where[t]:
                preds[where[t]].add(where[s])
    total = q.n_vertices
    ncomp = len(comps)
    chosen = [False] * ncomp

    def rec(c, size):
        if c == ncomp:
            if 0 < size < total:
                a = sorted(v for i in range(ncomp) if chosen[i] for v in comps[i])
                b = sorted(v for i in range(ncomp) if not chosen[i] for v in comps[i])
                yield a, b
            return
        if all(chosen[p] for p in preds[c]):
            chosen[c] = True
            yield from rec(c + 1, size + len(comps[c]))
            chosen[c] = False
        yield from rec(c + 1, size)

    yield from rec(0, 0)


def _point_cuts(q):
    if q.n_vertices < 2:
        return
    seen = set()
    prof = degree_profile(q)
    for v in q.vertices:
        rest = [u for u in q.vertices if u != v]
        cands = []
        if prof[v][1] == 0:
            cands.append((rest, [v]))
        if prof[v][0] == 0:
            cands.append(([v], rest))
        for a, b in cands:
            if (tuple(a), tuple(b)) not in seen:
                seen.add((tuple(a), tuple(b)))
                yield a, b


def condensation_cuts(q: Quiver):
    """List form of :func:`iter_condensation_cuts`; empty iff ``q`` is strongly connected."""
    return list(iter_condensation_cuts(q))


def markov_quiver() -> Quiver:
    return Quiver(3, 0, [(1, 2), (1, 2), (2, 3), (2, 3), (3, 1), (3, 1)])


def path_quiver(n: int) -> Quiver:
    """Linearly oriented ``A_n``: ``1 -> 2 -> ... -> n``."""
    return Quiver(n, 0, [(i, i + 1) for i in range(1, n)])


def cycle_quiver(n: int) -> Quiver:
    return Quiver(n, 0, [(i, i % n + 1) for i in range(1, n + 1)])
