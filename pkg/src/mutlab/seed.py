"""Seeds and the exchange relation."""

from __future__ import annotations

import json

from .errors import InvalidVertex, NotLaurent, PreconditionViolated
from .laurent import (
    LaurentForm,
    RatFunc,
    homogeneous_degree,
    laurent_normal_form,
    parse_ratfunc,
    ratfunc_eq,
)
from .quiver import Quiver, degree_profile, mutate

__all__ = [
    "Seed",
    "initial_seed",
    "mutate_seed",
    "exchange_polynomial",
    "check_exchange_homogeneity",
]


class Seed:
    """An ice quiver together with one rational function per vertex.

    Variables live in the field of fractions of ``Z[x1..xm]`` where ``m`` is
    the number of vertices.  They are kept as Laurent forms whenever
    possible; :attr:`vars` exposes them as :class:`RatFunc`.
    """

    __slots__ = ("quiver", "_vals")

    def __init__(self, quiver: Quiver, vars):
        vals = tuple(vars)
        if len(vals) != quiver.n_vertices:
            raise ValueError(f"{quiver.n_vertices} variables expected, got {len(vals)}")
        for v in vals:
            if not isinstance(v, (RatFunc, LaurentForm)):
                raise TypeError("seed variables must be RatFunc or LaurentForm")
            if v.nvars != quiver.n_vertices:
                raise ValueError("seed variables must live in x1..xm")
        self.quiver = quiver
        self._vals = vals

    @property
    def m(self):
        return self.quiver.n_vertices

    @property
    def vars(self):
        return tuple(v.to_ratfunc() if isinstance(v, LaurentForm) else v for v in self._vals)

    def var(self, i) -> RatFunc:
        """Variable at vertex ``i`` (1-based)."""
        v = self._vals[i - 1]
        return v.to_ratfunc() if isinstance(v, LaurentForm) else v

    def laurent(self, i) -> LaurentForm:
        """Laurent form of the variable at vertex ``i``; raises :class:`NotLaurent`."""
        v = self._vals[i - 1]
        return v if isinstance(v, LaurentForm) else laurent_normal_form(v)

    def laurent_forms(self):
        return [self.laurent(i) for i in range(1, self.m + 1)]

    def __eq__(self, other):
        if not isinstance(other, Seed):
            return NotImplemented
        if self.quiver != other.quiver:
            return False
        for a, b in zip(self._vals, other._vals):
            if isinstance(a, LaurentForm) and isinstance(b, LaurentForm):
                if a != b:
                    return False
            elif not ratfunc_eq(_rf(a), _rf(b)):
                return False
        return True

    __hash__ = None

    def to_dict(self):
        return {"quiver": self.quiver.to_dict(), "vars": [str(v) for v in self.vars]}

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        q = Quiver.from_dict(d["quiver"])
        m = q.n_vertices
        vals = []
        for text in d["vars"]:
            f = parse_ratfunc(text, m)
            try:
                vals.append(laurent_normal_form(f))
            except NotLaurent:
                vals.append(f)
        return cls(q, vals)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return f"Seed(m={self.m}, vars=[{', '.join(str(v) for v in self.vars)}])"


def _rf(v):
    return v.to_ratfunc() if isinstance(v, LaurentForm) else v


def initial_seed(q: Quiver) -> Seed:
    m = q.n_vertices
    return Seed(q, [LaurentForm.var(i, m) for i in range(1, m + 1)])


def exchange_polynomial(q: Quiver, k, values):
    """``prod_{k->i} v_i^r + prod_{j->k} v_j^r`` for the given vertex values."""
    out_prod = None
    in_prod = None
    for j in q.vertices:
        r = q.multiplicity(k, j) - q.multiplicity(j, k)
        if r > 0:
            t = values[j - 1] if r == 1 else _power(values[j - 1], r)
            out_prod = t if out_prod is None else out_prod * t
        elif r < 0:
            t = values[j - 1] if r == -1 else _power(values[j - 1], -r)
            in_prod = t if in_prod is None else in_prod * t
    one = _one_like(values[k - 1])
    return (out_prod if out_prod is not None else one) + (in_prod if in_prod is not None else one)


def _power(v, r):
    out = v
    for _ in range(r - 1):
        out = out * v
    return out


def _one_like(v):
    if isinstance(v, LaurentForm):
        return LaurentForm.const(1, v.nvars)
    return RatFunc.const(1, v.nvars)


def mutate_seed(s: Seed, k) -> Seed:
    """Mutate the seed at the mutable vertex ``k``.

    The new variable is computed as an exact quotient of Laurent
    polynomials; if some variable involved is not Laurent the computation
    falls back to rational functions.
    """
    q = s.quiver
    if not (isinstance(k, int) and 1 <= k <= q.n_mutable):
        raise InvalidVertex(f"cannot mutate at vertex {k!r}")
    vals = list(s._vals)
    if all(isinstance(v, LaurentForm) for v in vals):
        num = exchange_polynomial(q, k, vals)
        try:
            new = num / vals[k - 1]
        except NotLaurent:
            new = num.to_ratfunc() / vals[k - 1].to_ratfunc()
    else:
        rvals = [_rf(v) for v in vals]
        new = exchange_polynomial(q, k, rvals) / rvals[k - 1]
        try:
            new = laurent_normal_form(new)
        except NotLaurent:
            pass
    vals[k - 1] = new
    return Seed(mutate(q, k), vals)


def check_exchange_homogeneity(s: Seed) -> bool:
    """Check that every exchange relation of ``s`` is homogeneous of degree 2.

    Requires every mutable vertex to have two incoming and two outgoing
    arrows (frozen neighbours included).  The result is true when both
    exchange monomials at each mutable vertex have degree 2 in variables of
    degree 1, so that the grading propagates to every mutated variable.

    Raises
    ------
    PreconditionViolated
        If some mutable vertex is not 2-regular.
    """
    q = s.quiver
    prof = degree_profile(q)
    bad = [v for v in q.mutable_vertices if prof[v] != (2, 2)]
    if bad:
        raise PreconditionViolated(f"vertices {bad} are not 2-regular")
    degs = {}
    for k in q.mutable_vertices:
        for j in q.vertices:
            if q.multiplicity(k, j) or q.multiplicity(j, k):
                if j not in degs:
                    degs[j] = homogeneous_degree(s.var(j))
    for k in q.mutable_vertices:
        out_deg = sum(q.multiplicity(k, j) * (degs[j] or 0) for j in q.vertices if q.multiplicity(k, j))
        in_deg = sum(q.multiplicity(j, k) * (degs[j] or 0) for j in q.vertices if q.multiplicity(j, k))
        if any(degs[j] != 1 for j in q.vertices if q.multiplicity(k, j) or q.multiplicity(j, k)):
            return False
        if out_deg != 2 or in_deg != 2:
            return False
    return True
