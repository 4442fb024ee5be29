"""Index vectors and their piecewise-linear mutation rule."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .errors import CapExceeded, InvalidVertex, NotTwoRegular
from .quiver import Quiver, degree_profile, iter_mutation_class, mutate

__all__ = ["IndexVector", "mutate_index", "coeff_sum_walk", "sigma_obstruction", "ObstructionReport"]


@dataclass(frozen=True)
class IndexVector:
    """Integer coefficients ``y_i`` on the mutable vertices of ``quiver``."""

    coeffs: tuple
    quiver: Quiver

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(y) for y in self.coeffs))
        if len(self.coeffs) != self.quiver.n_mutable:
            raise ValueError(
                f"{self.quiver.n_mutable} coefficients expected, got {len(self.coeffs)}"
            )

    @property
    def total(self):
        return sum(self.coeffs)


def mutate_index(v: IndexVector, k) -> IndexVector:
    """Apply the mutation rule at ``k``.

    ``y_k`` changes sign; a vertex with ``r`` arrows to ``k`` gains
    ``r [y_k]_+`` and a vertex with ``r`` arrows from ``k`` loses
    ``r [-y_k]_+``.
    """
    q = v.quiver
    if not (isinstance(k, int) and 1 <= k <= q.n_mutable):
        raise InvalidVertex(f"cannot mutate at vertex {k!r}")
    y = list(v.coeffs)
    yk = y[k - 1]
    row = q._b[k - 1]
    for i in range(q.n_mutable):
        r = row[i]
        if r < 0:
            y[i] += -r * max(yk, 0)
        elif r > 0:
            y[i] -= r * max(-yk, 0)
    y[k - 1] = -yk
    return IndexVector(tuple(y), mutate(q, k))


def coeff_sum_walk(v: IndexVector, ks):
    """Running coefficient sums: the start value, then one value per mutation."""
    sums = [v.total]
    for k in ks:
        v = mutate_index(v, k)
        sums.append(v.total)
    return sums


def random_walk(q: Quiver, steps, rng=None):
    """A reproducible sequence of uniformly random mutable vertices."""
    rng = rng if rng is not None else random.Random(0)
    return [rng.randint(1, q.n_mutable) for _ in range(steps)]


@dataclass(frozen=True)
class ObstructionReport:
    start_sum: int
    target_sum: int
    invariant_holds: bool
    verdict: str

    def to_dict(self):
        return {
            "start_sum": self.start_sum,
            "target_sum": self.target_sum,
            "invariant_holds": self.invariant_holds,
            "verdict": self.verdict,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _two_regular(q: Quiver):
    # the index rule only moves mutable coefficients, so frozen arrows do not count
    prof = degree_profile(q.induced(list(q.mutable_vertices)))
    return [v for v in q.mutable_vertices if prof[v] != (2, 2)]


def sigma_obstruction(q: Quiver, class_cap=None) -> ObstructionReport:
    """Compare the index sums of the shifted object in the two relevant seeds.

    In the initial seed the index is ``(-1, ..., -1)``; in the shifted seed it
    is ``(1, ..., 1)``.  A mutation at a 2-regular vertex preserves the sum,
    so if every quiver in the mutation class is 2-regular (as for adjacency
    quivers of once-punctured closed surfaces) the sums ``-n`` and ``n`` can
    never be connected.

    Parameters
    ----------
    q : Quiver
    class_cap : int, optional
        When given, enumerate the mutation class (up to this many classes)
        and confirm that every member is 2-regular.  Without it the report
        relies on ``q`` coming from a once-punctured closed surface.

    Raises
    ------
    NotTwoRegular
        If some mutable vertex does not have two arrows in and two out.
    """
    bad = _two_regular(q)
    if bad:
        raise NotTwoRegular(f"vertices {bad} are not 2-regular")
    n = q.n_mutable
    holds = n > 0
    if holds and class_cap is not None:
        for count, (_, member, _) in enumerate(iter_mutation_class(q), 1):
            if count > class_cap:
                raise CapExceeded(class_cap, count)
            if _two_regular(member):
                holds = False
                break
    if not n:
        verdict = "trivial quiver"
    elif holds:
        verdict = "unreachable by any mutation sequence"
    else:
        verdict = "inconclusive: the mutation class leaves the 2-regular quivers"
    return ObstructionReport(start_sum=-n, target_sum=n, invariant_holds=holds, verdict=verdict)
