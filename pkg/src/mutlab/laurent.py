"""Exact multivariate polynomials, Laurent polynomials and rational functions.

Coefficients are Python integers.  Monomials are packed into single integers
with one bit field per variable, preceded by a total-degree field, so that
integer comparison of packed monomials is the graded-lexicographic order
``x1 > x2 > ... > xm`` and monomial multiplication is integer addition.

No multivariate gcd is ever computed: rational functions are compared by
cross-multiplication, and Laurent normal forms come from clearing monomial
factors plus exact division.
"""

from __future__ import annotations

import heapq
import re
from functools import reduce
from operator import mul

from .errors import NotDivisible, NotLaurent, ParseError, ZeroDenominator

__all__ = [
    "MultiPoly",
    "LaurentForm",
    "RatFunc",
    "poly_exact_div",
    "ratfunc_eq",
    "laurent_normal_form",
    "homogeneous_degree",
    "specialize",
    "sum_fractions",
    "parse_ratfunc",
    "parse_poly",
]

_W = 24
_VMAX = 1 << (_W - 1)
_FIELD = (1 << _W) - 1


class _Layout:
    __slots__ = ("nvars", "deg_shift", "guard", "shifts")
    _cache = {}

    def __init__(self, nvars):
        self.nvars = nvars
        self.deg_shift = _W * nvars
        self.shifts = [_W * (nvars - 1 - i) for i in range(nvars)]
        self.guard = sum((_VMAX << (_W * f)) for f in range(nvars + 1))

    @classmethod
    def get(cls, nvars):
        lay = cls._cache.get(nvars)
        if lay is None:
            lay = cls._cache[nvars] = cls(nvars)
        return lay

    def pack(self, exps):
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        d = 0
        p = 0
        for e, s in zip(exps, self.shifts):
            if e < 0 or e >= _VMAX:
                raise ValueError(f"exponent {e} out of range")
            d += e
            p |= e << s
        if d >= _VMAX:
            raise OverflowError("total degree too large")
        return p | (d << self.deg_shift)

    def unpack(self, p):
        return tuple((p >> s) & _FIELD for s in self.shifts)

    def degree(self, p):
        return p >> self.deg_shift

    def divides(self, d, p):
        g = self.guard
        return ((p | g) - d) & g == g


class MultiPoly:
    """A polynomial in ``x1..x_nvars`` with integer coefficients.

    Build from a mapping ``exponent tuple -> coefficient``; zero coefficients
    are dropped.  Instances are immutable.
    """

    __slots__ = ("nvars", "_t", "_lay", "_hash")

    def __init__(self, terms=None, nvars=None):
        if nvars is None:
            if not terms:
                raise ValueError("nvars is required for an empty polynomial")
            nvars = len(next(iter(terms)))
        self.nvars = nvars
        self._lay = _Layout.get(nvars)
        t = {}
        if terms:
            pack = self._lay.pack
            for e, c in terms.items():
                c = int(c)
                if c:
                    k = pack(tuple(e))
                    t[k] = t.get(k, 0) + c
                    if not t[k]:
                        del t[k]
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t, nvars):
        p = cls.__new__(cls)
        p.nvars = nvars
        p._lay = _Layout.get(nvars)
        p._t = t
        p._hash = None
        return p

    @classmethod
    def const(cls, c, nvars):
        return cls._raw({0: int(c)} if c else {}, nvars)

    @classmethod
    def var(cls, i, nvars):
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable x{i} outside x1..x{nvars}")
        e = [0] * nvars
        e[i - 1] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls({tuple(exps): coeff}, len(exps))

    # inspection

    def terms(self):
        """Dictionary ``exponent tuple -> coefficient`` in decreasing grlex order."""
        unpack = self._lay.unpack
        return {unpack(k): self._t[k] for k in sorted(self._t, reverse=True)}

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def is_monomial(self):
        return len(self._t) == 1

    def leading_term(self):
        k = max(self._t)
        return self._lay.unpack(k), self._t[k]

    def degree(self):
        """Total degree (``-1`` for the zero polynomial)."""
        if not self._t:
            return -1
        return self._lay.degree(max(self._t))

    def is_homogeneous(self):
        if not self._t:
            return True
        deg = self._lay.degree
        it = iter(self._t)
        d = deg(next(it))
        return all(deg(k) == d for k in it)

    def monomial_content(self):
        """Exponents of the largest monomial dividing every term."""
        if not self._t:
            return (0,) * self.nvars
        unpack = self._lay.unpack
        exps = [unpack(k) for k in self._t]
        return tuple(min(col) for col in zip(*exps))

    def coefficients(self):
        return list(self._t.values())

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return MultiPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return MultiPoly._raw(t, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({k: -c for k, c in self._t.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if not a or not b:
            return MultiPoly._raw({}, self.nvars)
        if self.degree() + other.degree() >= _VMAX:
            raise OverflowError("total degree too large")
        if len(a) < len(b):
            a, b = b, a
        t = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        return MultiPoly._raw({k: c for k, c in t.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale_monomial(self, exps, coeff=1):
        """Multiply by ``coeff * x^exps`` (cheap shift of every packed key)."""
        d = self._lay.pack(tuple(exps))
        return MultiPoly._raw({k + d: c * coeff for k, c in self._t.items()}, self.nvars)

    def divide_monomial(self, exps):
        """Exact division by ``x^exps``; raises :class:`NotDivisible` otherwise."""
        lay = self._lay
        d = lay.pack(tuple(exps))
        t = {}
        for k, c in self._t.items():
            if not lay.divides(d, k):
                raise NotDivisible("monomial does not divide polynomial")
            t[k - d] = c
        return MultiPoly._raw(t, self.nvars)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._t.items())))
        return self._hash

    def substitute(self, assignments):
        """Replace ``x_i`` by the integer ``assignments[i]`` (1-based keys)."""
        lay = self._lay
        t = {}
        for k, c in self._t.items():
            e = list(lay.unpack(k))
            for i, val in assignments.items():
                p = e[i - 1]
                if p:
                    c *= val**p
                    e[i - 1] = 0
            if c:
                kk = lay.pack(tuple(e))
                t[kk] = t.get(kk, 0) + c
        return MultiPoly._raw({k: c for k, c in t.items() if c}, self.nvars)

    def evaluate(self, point):
        return self.substitute({i + 1: v for i, v in enumerate(point)}).constant_term()

    def constant_term(self):
        return self._t.get(0, 0)

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        unpack = self._lay.unpack
        for k in sorted(self._t, reverse=True):
            c = self._t[k]
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(unpack(k))
                if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({self}, nvars={self.nvars})"


def poly_exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Return ``q`` with ``a == b * q``.

    Multivariate division by a single polynomial in grlex order; since one
    polynomial is a Groebner basis of the ideal it generates, a non-zero
    remainder appears exactly when ``b`` does not divide ``a``.

    Raises
    ------
    ZeroDivisionError
        If ``b`` is zero.
    NotDivisible
        If the division leaves a remainder.
    """
    if not b._t:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.nvars != b.nvars:
        raise ValueError("polynomials live in different rings")
    lay = a._lay
    bt = b._t
    lb = max(bt)
    lcb = bt[lb]
    if len(bt) == 1:
        t = {}
        for k, c in a._t.items():
            if not lay.divides(lb, k) or c % lcb:
                raise NotDivisible("division leaves a remainder")
            t[k - lb] = c // lcb
        return MultiPoly._raw(t, a.nvars)
    r = dict(a._t)
    heap = [-k for k in r]
    heapq.heapify(heap)
    q = {}
    others = [(k, c) for k, c in bt.items() if k != lb]
    while r:
        k = -heapq.heappop(heap)
        c = r.get(k)
        if c is None:
            continue
        if not lay.divides(lb, k) or c % lcb:
            raise NotDivisible("division leaves a remainder")
        f = c // lcb
        mq = k - lb
        q[mq] = f
        del r[k]
        for kb, cb in others:
            kk = mq + kb
            v = r.get(kk)
            if v is None:
                r[kk] = -f * cb
                heapq.heappush(heap, -kk)
            else:
                v -= f * cb
                if v:
                    r[kk] = v
                else:
                    del r[kk]
    return MultiPoly._raw(q, a.nvars)


class LaurentForm:
    """``numerator / x^denominator_exponents`` in lowest monomial terms.

    The numerator is never divisible by a variable that also appears in the
    denominator, so two equal Laurent polynomials have identical forms.
    """

    __slots__ = ("numerator", "denominator_exponents")

    def __init__(self, numerator: MultiPoly, denominator_exponents=None):
        n = numerator.nvars
        den = tuple(denominator_exponents) if denominator_exponents is not None else (0,) * n
        if len(den) != n:
            raise ValueError("denominator exponent vector has the wrong length")
        if any(e < 0 for e in den):
            raise ValueError("denominator exponents must be non-negative")
        if numerator.is_zero():
            den = (0,) * n
        elif any(den):
            content = numerator.monomial_content()
            common = tuple(min(c, d) for c, d in zip(content, den))
            if any(common):
                numerator = numerator.divide_monomial(common)
                den = tuple(d - c for d, c in zip(den, common))
        self.numerator = numerator
        self.denominator_exponents = den

    @property
    def nvars(self):
        return self.numerator.nvars

    @classmethod
    def var(cls, i, nvars):
        return cls(MultiPoly.var(i, nvars))

    @classmethod
    def const(cls, c, nvars):
        return cls(MultiPoly.const(c, nvars))

    def to_ratfunc(self) -> "RatFunc":
        return RatFunc(self.numerator, MultiPoly.monomial(self.denominator_exponents))

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentForm(self.numerator * other, self.denominator_exponents)
        den = tuple(a + b for a, b in zip(self.denominator_exponents, other.denominator_exponents))
        return LaurentForm(self.numerator * other.numerator, den)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentForm.const(other, self.nvars)
        da, db = self.denominator_exponents, other.denominator_exponents
        den = tuple(max(a, b) for a, b in zip(da, db))
        na = self.numerator.scale_monomial(tuple(d - a for d, a in zip(den, da)))
        nb = other.numerator.scale_monomial(tuple(d - b for d, b in zip(den, db)))
        return LaurentForm(na + nb, den)

    __radd__ = __add__

    def __neg__(self):
        return LaurentForm(-self.numerator, self.denominator_exponents)

    def __sub__(self, other):
        return self + (-other)

    def __truediv__(self, other):
        """Exact quotient; raises :class:`NotLaurent` if it is not Laurent."""
        if other.numerator.is_zero():
            raise ZeroDivisionError("division by zero")
        content = other.numerator.monomial_content()
        core = other.numerator.divide_monomial(content)
        try:
            q = poly_exact_div(self.numerator, core)
        except NotDivisible as exc:
            raise NotLaurent("quotient is not a Laurent polynomial") from exc
        # self / other = q * x^{other.den} / (x^{self.den} * x^{content})
        shift = other.denominator_exponents
        den = [a + c for a, c in zip(self.denominator_exponents, content)]
        common = [min(s, d) for s, d in zip(shift, den)]
        q = q.scale_monomial(tuple(s - c for s, c in zip(shift, common)))
        return LaurentForm(q, tuple(d - c for d, c in zip(den, common)))

    def __eq__(self, other):
        if not isinstance(other, LaurentForm):
            return NotImplemented
        return (
            self.numerator == other.numerator
            and self.denominator_exponents == other.denominator_exponents
        )

    def __hash__(self):
        return hash((self.numerator, self.denominator_exponents))

    def is_polynomial(self):
        return not any(self.denominator_exponents)

    def __str__(self):
        return str(self.to_ratfunc())

    def __repr__(self):
        return f"LaurentForm({self})"


class RatFunc:
    """``numerator / denominator`` with the denominator's leading coefficient positive.

    Not gcd-reduced; only common monomial factors are cancelled.  Equality
    is :func:`ratfunc_eq`.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: MultiPoly, denominator: MultiPoly = None):
        if denominator is None:
            denominator = MultiPoly.const(1, numerator.nvars)
        if isinstance(numerator, int):
            numerator = MultiPoly.const(numerator, denominator.nvars)
        if denominator.is_zero():
            raise ZeroDenominator("zero denominator")
        if denominator.nvars != numerator.nvars:
            raise ValueError("numerator and denominator live in different rings")
        if numerator.is_zero():
            denominator = MultiPoly.const(1, numerator.nvars)
        else:
            common = tuple(
                min(a, b)
                for a, b in zip(numerator.monomial_content(), denominator.monomial_content())
            )
            if any(common):
                numerator = numerator.divide_monomial(common)
                denominator = denominator.divide_monomial(common)
        if denominator.leading_term()[1] < 0:
            numerator, denominator = -numerator, -denominator
        self.numerator = numerator
        self.denominator = denominator

    @property
    def nvars(self):
        return self.numerator.nvars

    @classmethod
    def var(cls, i, nvars):
        return cls(MultiPoly.var(i, nvars))

    @classmethod
    def const(cls, c, nvars):
        return cls(MultiPoly.const(c, nvars))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentForm):
            return other.to_ratfunc()
        if isinstance(other, MultiPoly):
            return RatFunc(other)
        if isinstance(other, int):
            return RatFunc.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.numerator, self.denominator, other.numerator, other.denominator
        if b == d:
            return RatFunc(a + c, b)
        if _unit_monomial(b) and _unit_monomial(d):
            return (_as_laurent(self) + _as_laurent(other)).to_ratfunc()
        return RatFunc(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.numerator.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.numerator * other.denominator, self.denominator * other.numerator)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e):
        if e >= 0:
            return RatFunc(self.numerator**e, self.denominator**e)
        return RatFunc(self.denominator**-e, self.numerator**-e)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ratfunc_eq(self, other)

    __hash__ = None

    def __str__(self):
        num = str(self.numerator)
        den = self.denominator
        if den == 1:
            return num
        if len(self.numerator) > 1 or num.startswith("-"):
            num = f"({num})"
        d = str(den)
        if not re.fullmatch(r"x\d+|\d+", d):
            d = f"({d})"
        return f"{num}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


def _unit_monomial(p: MultiPoly):
    return p.is_monomial() and p.leading_term()[1] == 1


def _as_laurent(f: RatFunc) -> LaurentForm:
    (exps, _), = f.denominator.terms().items()
    return LaurentForm(f.numerator, exps)


def ratfunc_eq(f: RatFunc, g: RatFunc) -> bool:
    """Cross-multiplication test ``f.num * g.den == g.num * f.den``."""
    if f.denominator == g.denominator:
        return f.numerator == g.numerator
    return f.numerator * g.denominator == g.numerator * f.denominator


def laurent_normal_form(f: RatFunc) -> LaurentForm:
    """Write ``f`` as a Laurent polynomial with integer coefficients.

    Monomial factors of the denominator are moved to the exponent vector and
    the remaining factor must divide the numerator exactly.

    Raises
    ------
    NotLaurent
        If ``f`` is not a Laurent polynomial with integer coefficients.
    """
    content = f.denominator.monomial_content()
    core = f.denominator.divide_monomial(content)
    try:
        num = poly_exact_div(f.numerator, core)
    except NotDivisible as exc:
        raise NotLaurent(f"{f} is not a Laurent polynomial") from exc
    return LaurentForm(num, content)


def homogeneous_degree(f):
    """``deg(num) - deg(den)`` if both are homogeneous, else ``None``."""
    if isinstance(f, LaurentForm):
        f = f.to_ratfunc()
    if isinstance(f, MultiPoly):
        f = RatFunc(f)
    if f.numerator.is_zero():
        return None
    if not (f.numerator.is_homogeneous() and f.denominator.is_homogeneous()):
        return None
    return f.numerator.degree() - f.denominator.degree()


def specialize(f: RatFunc, assignments) -> RatFunc:
    """Substitute integers for variables (keys are 1-based variable indices)."""
    num = f.numerator.substitute(assignments)
    den = f.denominator.substitute(assignments)
    if den.is_zero():
        raise ZeroDenominator("substitution makes the denominator vanish")
    return RatFunc(num, den)


def sum_fractions(terms, nvars):
    """Sum fractions whose denominators are given as lists of polynomial factors.

    ``terms`` holds pairs ``(numerator, factors)``.  Factors are matched by
    equality, and the common denominator uses each distinct factor to its
    largest multiplicity, which avoids the blow-up of pairwise
    cross-multiplication when many terms share factors.
    """
    terms = list(terms)
    need = {}
    for _, factors in terms:
        count = {}
        for p in factors:
            count[p] = count.get(p, 0) + 1
        for p, c in count.items():
            need[p] = max(need.get(p, 0), c)
    total = MultiPoly.const(0, nvars)
    one = MultiPoly.const(1, nvars)
    for num, factors in terms:
        count = {}
        for p in factors:
            count[p] = count.get(p, 0) + 1
        missing = [p**(need[p] - count.get(p, 0)) for p in need if need[p] > count.get(p, 0)]
        total = total + reduce(mul, missing, num)
    den = reduce(mul, (p**e for p, e in need.items()), one)
    return RatFunc(total, den)


# text format

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif var is not None:
            out.append(("var", int(var)))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, nvars):
        self.toks = tokens
        self.i = 0
        self.nvars = nvars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ParseError(f"expected {op!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.factor()
        if tok == ("op", "+"):
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer")
            base = base**e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return RatFunc.const(val, self.nvars)
        if kind == "var":
            if not 1 <= val <= self.nvars:
                raise ParseError(f"x{val} outside x1..x{self.nvars}")
            return RatFunc.var(val, self.nvars)
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_ratfunc(text: str, nvars: int | None = None) -> RatFunc:
    """Parse the grammar produced by ``str(RatFunc)`` (and general +,-,*,/,^)."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    if nvars is None:
        nvars = max([v for k, v in tokens if k == "var"], default=1)
    p = _Parser(tokens, nvars)
    try:
        val = p.expr()
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from exc
    if p.i != len(tokens):
        raise ParseError(f"trailing input after token {p.i}")
    return val


def parse_poly(text: str, nvars: int | None = None) -> MultiPoly:
    f = parse_ratfunc(text, nvars)
    return laurent_normal_form(f).numerator if f.denominator.is_constant() else _not_poly(text)


def _not_poly(text):
    raise ParseError(f"{text!r} is not a polynomial")
