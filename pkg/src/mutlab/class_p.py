"""Membership in the class P generated by the point under mutation and triangular extension.

The search follows the naive algorithm: walk the mutation class, and for
each member try every split into a triangular extension whose two parts are
recursively in the class.  Results are memoised on canonical keys.  A
per-class budget bounds the walk; exhausting it yields an explicit
``budget-exhausted`` verdict, never a guessed answer.

Witnesses are JSON-ready trees.  A node is one of

* ``{"point": true}`` for the one-vertex quiver;
* ``{"relabel": {old: new}, "then": node}``;
* ``{"mutations": [k, ...], "cut": {"A": [...], "B": [...]},
  "left": node, "right": node}`` meaning: mutate along the sequence, then
  read the quiver as a triangular extension of the full subquivers on ``A``
  and ``B`` (each relabelled ``1..`` in increasing order).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvalidQuiver, StructureError
from .quiver import (
    Quiver,
    canonical_labelling,
    iter_condensation_cuts,
    iter_mutation_class,
    mutate,
)

__all__ = [
    "PVerdict",
    "PSolver",
    "is_in_P",
    "is_in_P_prime",
    "is_triangular_extension_witness",
    "replay_witness",
    "weak_components",
    "top_split",
]

YES, NO, EXHAUSTED = "yes", "no", "budget-exhausted"


@dataclass
class PVerdict:
    answer: str
    witness: dict | None = None
    reason: str = ""
    members_scanned: int = 0

    @property
    def is_yes(self):
        return self.answer == YES

    def to_dict(self):
        return {
            "answer": self.answer,
            "witness": self.witness,
            "reason": self.reason,
            "members_scanned": self.members_scanned,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def weak_components(q: Quiver):
    """Vertex sets of the connected components of the underlying graph."""
    m = q.n_vertices
    comp = [0] * m
    out = []
    for r in range(m):
        if comp[r]:
            continue
        cid = len(out) + 1
        comp[r] = cid
        stack, verts = [r], []
        while stack:
            v = stack.pop()
            verts.append(v + 1)
            for w in range(m):
                if q._b[v][w] and not comp[w]:
                    comp[w] = cid
                    stack.append(w)
        out.append(sorted(verts))
    return out


def _bridging(q: Quiver, a, b):
    return [(s, t) for s, t in q._arrows if s in set(a) and t in set(b)]


def is_triangular_extension_witness(q: Quiver):
    """A split ``(A, B, bridging arrows)`` of ``q`` as a triangular extension, or ``None``.

    Disconnected quivers split along a component with no bridging arrows.
    """
    comps = weak_components(q)
    if len(comps) > 1:
        a = comps[0]
        b = sorted(v for c in comps[1:] for v in c)
        return a, b, []
    for a, b in iter_condensation_cuts(q):
        return a, b, _bridging(q, a, b)
    return None


@dataclass
class _Stats:
    members: int = 0


@dataclass
class PSolver:
    """Memoised decision procedure for P (or P' with ``point_cuts_only``).

    Parameters
    ----------
    budget : int
        Maximum number of isomorphism classes visited while scanning one
        mutation class.
    point_cuts_only : bool
        Only allow extensions where one side is a single vertex.
    sink_shortcut : bool
        Before scanning a class, try removing a sink or source of the start
        quiver.
    """

    budget: int = 100_000
    point_cuts_only: bool = False
    sink_shortcut: bool = True
    memo: dict = field(default_factory=dict)
    stats: _Stats = field(default_factory=_Stats)

    def solve(self, q: Quiver) -> PVerdict:
        q = q.unfrozen()
        if q.n_vertices == 0:
            raise InvalidQuiver("the empty quiver is not considered")
        start = self.stats.members
        answer, witness, reason = self._solve(q)
        return PVerdict(answer, witness, reason, self.stats.members - start)

    def _solve(self, q):
        if q.n_vertices == 1:
            return YES, {"point": True}, "single vertex"
        key, order = canonical_labelling(q)
        perm = {v: i + 1 for i, v in enumerate(order)}
        if key not in self.memo:
            canon = q.relabel(perm)
            self.memo[key] = (EXHAUSTED, None, "in progress")
            self.memo[key] = self._solve_canonical(canon)
        answer, witness, reason = self.memo[key]
        if answer == YES and any(k != v for k, v in perm.items()):
            witness = {"relabel": {str(k): v for k, v in perm.items()}, "then": witness}
        return answer, witness, reason

    def _split(self, rep, path, a, b):
        left = self._solve(rep.induced(a))
        if left[0] != YES:
            return left[0], None
        right = self._solve(rep.induced(b))
        if right[0] != YES:
            return right[0], None
        node = {
            "mutations": list(path),
            "cut": {"A": list(a), "B": list(b)},
            "left": left[1],
            "right": right[1],
        }
        return YES, node

    def _solve_canonical(self, q):
        comps = weak_components(q)
        if len(comps) > 1:
            a = comps[0]
            b = sorted(v for c in comps[1:] for v in c)
            ans, node = self._split(q, (), a, b)
            if ans == YES:
                return YES, node, "every component is in the class"
            return ans, None, "a component is not in the class" if ans == NO else "budget exhausted in a component"
        exhausted = False
        if self.sink_shortcut:
            for a, b in _sink_source_cuts(q):
                ans, node = self._split(q, (), a, b)
                if ans == YES:
                    return YES, node, "sink or source removal"
                exhausted |= ans == EXHAUSTED
        count = 0
        for key, rep, path in iter_mutation_class(q):
            count += 1
            self.stats.members += 1
            if count > self.budget:
                return EXHAUSTED, None, f"mutation class exceeds the budget of {self.budget}"
            cuts = iter_condensation_cuts(rep, max_side=1 if self.point_cuts_only else None)
            for a, b in cuts:
                ans, node = self._split(rep, path, a, b)
                if ans == YES:
                    return YES, node, f"cut found after scanning {count} class members"
                exhausted |= ans == EXHAUSTED
        if exhausted:
            return EXHAUSTED, None, "a sub-quiver exhausted the budget"
        return NO, None, f"none of the {count} class members splits into members of the class"


def _sink_source_cuts(q):
    for a, b in iter_condensation_cuts(q, max_side=1):
        yield a, b


def is_in_P(q: Quiver, budget: int = 100_000, sink_shortcut: bool = True) -> PVerdict:
    """Decide whether ``q`` lies in P (frozen marks are ignored)."""
    return PSolver(budget=budget, sink_shortcut=sink_shortcut).solve(q)


def is_in_P_prime(q: Quiver, budget: int = 100_000, sink_shortcut: bool = True) -> PVerdict:
    """As :func:`is_in_P` with only one-point extensions and co-extensions."""
    return PSolver(budget=budget, point_cuts_only=True, sink_shortcut=sink_shortcut).solve(q)


def replay_witness(q: Quiver, witness, point_cuts_only=False) -> bool:
    """Check a ``yes`` witness against ``q``; raises :class:`StructureError` on failure."""
    q = q.unfrozen()
    if witness.get("point"):
        if q.n_vertices != 1:
            raise StructureError("point node used for a quiver with several vertices")
        return True
    if "relabel" in witness:
        perm = {int(k): v for k, v in witness["relabel"].items()}
        return replay_witness(q.relabel(perm), witness["then"], point_cuts_only)
    for k in witness["mutations"]:
        q = mutate(q, k)
    a, b = witness["cut"]["A"], witness["cut"]["B"]
    if not a or not b or sorted(a + b) != list(q.vertices):
        raise StructureError("cut is not a partition into non-empty parts")
    sa = set(a)
    if any(q._b[t - 1][s - 1] > 0 for s in sa for t in q.vertices if t not in sa):
        raise StructureError("an arrow goes from B back to A")
    # a split with no bridging arrows is a disjoint union, built point by point
    if point_cuts_only and min(len(a), len(b)) != 1 and _bridging(q, a, b):
        raise StructureError("cut is not a one-point extension")
    return replay_witness(q.induced(sorted(a)), witness["left"], point_cuts_only) and replay_witness(
        q.induced(sorted(b)), witness["right"], point_cuts_only
    )


def top_split(q: Quiver, witness):
    """Apply the outermost relabelling and mutations of a witness.

    Returns ``(quiver, A, B, bridging arrows)`` for its first cut, or
    ``None`` for a point.
    """
    q = q.unfrozen()
    while "relabel" in witness:
        q = q.relabel({int(k): v for k, v in witness["relabel"].items()})
        witness = witness["then"]
    if witness.get("point"):
        return None
    for k in witness["mutations"]:
        q = mutate(q, k)
    a, b = witness["cut"]["A"], witness["cut"]["B"]
    return q, a, b, _bridging(q, a, b)
