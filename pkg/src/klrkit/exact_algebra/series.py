"""Truncated multivariate power series.

A ``TruncSeries`` of order N is known exactly in every total degree <= N and
unknown above.  Binary operations take the minimum order of their operands;
division by a linear form loses one order.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..errors import NonzeroConstantTerm, NotDivisible, NotInIdeal
from .multipoly import MultiPoly, exact_divide, grlex_key


class TruncSeries:
    __slots__ = ("nvars", "order", "terms")

    def __init__(self, nvars: int, order: int, terms=None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.nvars = nvars
        self.order = order
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c and sum(e) <= order:
                    self.terms[e] = c

    @classmethod
    def _raw(cls, nvars, order, terms):
        s = cls.__new__(cls)
        s.nvars, s.order, s.terms = nvars, order, terms
        return s

    @classmethod
    def zero(cls, nvars: int, order: int) -> "TruncSeries":
        return cls._raw(nvars, order, {})

    @classmethod
    def constant(cls, nvars: int, order: int, c=1) -> "TruncSeries":
        return cls._raw(nvars, order, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, order: int, k: int) -> "TruncSeries":
        if order < 1:
            return cls.zero(nvars, order)
        e = [0] * nvars
        e[k - 1] = 1
        return cls._raw(nvars, order, {tuple(e): 1})

    @classmethod
    def from_poly(cls, p: MultiPoly, order: int) -> "TruncSeries":
        return cls(p.nvars, order, p.terms)

    def to_poly(self) -> MultiPoly:
        return MultiPoly(self.nvars, self.terms)

    # -- queries ----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def truncate(self, order: int) -> "TruncSeries":
        if order >= self.order:
            return self
        return TruncSeries._raw(
            self.nvars, order, {e: c for e, c in self.terms.items() if sum(e) <= order}
        )

    def homogeneous_part(self, m: int) -> MultiPoly:
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == m})

    def eq_upto(self, other: "TruncSeries", order: int | None = None) -> bool:
        """Equality of all coefficients of total degree <= order."""
        if order is None:
            order = min(self.order, other.order)
        a = self.truncate(order).terms
        b = other.truncate(order).terms
        return a == b

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(self.nvars, self.order, other)
        order = min(self.order, other.order)
        out = {e: c for e, c in self.terms.items() if sum(e) <= order}
        for e, c in other.terms.items():
            if sum(e) > order:
                continue
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return TruncSeries._raw(self.nvars, order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(self.nvars, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(self.nvars, self.order, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncSeries":
        if not c:
            return TruncSeries.zero(self.nvars, self.order)
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if w:
                out[e] = w
        return TruncSeries._raw(self.nvars, self.order, out)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        order = min(self.order, other.order)
        a = [(e, sum(e), c) for e, c in self.terms.items()]
        b = [(e, sum(e), c) for e, c in other.terms.items()]
        out = {}
        for e1, d1, c1 in a:
            if d1 > order:
                continue
            for e2, d2, c2 in b:
                if d1 + d2 > order:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return TruncSeries(self.nvars, order, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, m: int):
        out = TruncSeries.constant(self.nvars, self.order, 1)
        base = self
        while m:
            if m & 1:
                out = out * base
            m >>= 1
            if m:
                base = base * base
        return out

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse of a series with invertible constant term."""
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        c0_inv = 1 / c0 if not isinstance(c0, int) else Fraction(1, c0)
        g = (self - c0).scale(c0_inv)  # self = c0 (1 + g)
        acc = TruncSeries.constant(self.nvars, self.order, 1)
        term = acc
        neg_g = -g
        for _ in range(self.order):
            term = term * neg_g
            if not term:
                break
            acc = acc + term
        return acc.scale(c0_inv)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return self.scale(1 / other if not isinstance(other, int) else Fraction(1, other))

    def mul_var(self, k: int) -> "TruncSeries":
        i = k - 1
        out = {}
        for e, c in self.terms.items():
            if sum(e) + 1 <= self.order:
                out[e[:i] + (e[i] + 1,) + e[i + 1:]] = c
        return TruncSeries._raw(self.nvars, self.order, out)

    def swap(self, k: int) -> "TruncSeries":
        """Exchange variables k and k+1."""
        i = k - 1
        return TruncSeries._raw(
            self.nvars,
            self.order,
            {e[:i] + (e[i + 1], e[i]) + e[i + 2:]: c for e, c in self.terms.items()},
        )

    def map_coeffs(self, fn) -> "TruncSeries":
        return TruncSeries(self.nvars, self.order, {e: fn(c) for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            if other == 0:
                return not self.terms
            return NotImplemented
        return self.nvars == other.nvars and self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.order, frozenset(self.terms.items())))

    def __repr__(self):
        return f"TruncSeries({self.to_poly()} + O({self.order + 1}))"


def series_divide_linear(f: TruncSeries, ell) -> TruncSeries:
    """Return g with f = ell*g, where ell is a linear form given by its coefficients.

    Works degree by degree: the degree-m part of f must equal ell times the
    degree-(m-1) part of g.  The result has order f.order - 1.
    """
    ell = tuple(ell)
    if len(ell) != f.nvars or not any(ell):
        raise ValueError("linear form must have one coefficient per variable, not all zero")
    if f.order < 1:
        raise ValueError("cannot divide a series of order 0 by a linear form")
    if f.constant_term():
        raise NotInIdeal("series has a nonzero constant term")
    lin = MultiPoly(f.nvars, {
        tuple(1 if j == i else 0 for j in range(f.nvars)): c for i, c in enumerate(ell) if c
    })
    out = {}
    for m in range(1, f.order + 1):
        part = f.homogeneous_part(m)
        if not part:
            continue
        try:
            g = exact_divide(part, lin)
        except NotDivisible as exc:
            raise NotInIdeal(f"degree-{m} part {part} is not divisible by {lin}") from exc
        out.update(g.terms)
    return TruncSeries(f.nvars, f.order - 1, out)


def series_substitute(f: TruncSeries, assignment) -> TruncSeries:
    """Compose f with series (one per variable of f), all without constant term."""
    assignment = list(assignment)
    if len(assignment) != f.nvars:
        raise ValueError("need one substituted series per variable")
    if not assignment:
        return f
    for s in assignment:
        if s.constant_term():
            raise NonzeroConstantTerm("substituted series must have zero constant term")
    nv = assignment[0].nvars
    order = min([f.order] + [s.order for s in assignment])
    powers = []
    for j, s in enumerate(assignment):
        top = max((e[j] for e in f.terms), default=0)
        pw = [TruncSeries.constant(nv, order, 1)]
        for _ in range(min(top, order)):
            pw.append(pw[-1] * s.truncate(order))
        powers.append(pw)
    acc = TruncSeries.zero(nv, order)
    for e, c in sorted(f.terms.items(), key=lambda t: grlex_key(t[0])):
        if sum(e) > order:
            continue
        term = TruncSeries.constant(nv, order, c)
        for j, a in enumerate(e):
            if a:
                term = term * powers[j][a]
        acc = acc + term
    return acc


def log1p_series(nvars: int, order: int, k: int) -> TruncSeries:
    """log(1 + u_k) = sum_{m>=1} (-1)^{m+1} u_k^m / m."""
    out = {}
    for m in range(1, order + 1):
        e = [0] * nvars
        e[k - 1] = m
        out[tuple(e)] = Fraction((-1) ** (m + 1), m)
    return TruncSeries(nvars, order, out)


def expm1_series(nvars: int, order: int, k: int) -> TruncSeries:
    """exp(u_k) - 1 = sum_{m>=1} u_k^m / m!."""
    out = {}
    for m in range(1, order + 1):
        e = [0] * nvars
        e[k - 1] = m
        out[tuple(e)] = Fraction(1, factorial(m))
    return TruncSeries(nvars, order, out)
