"""Sparse multivariate polynomials with a pluggable coefficient field.

Coefficients may be ints, Fractions, RationalFunctionQ or RationalFunctionQU;
anything with field arithmetic and a falsy zero works.  Variables are
x1..xd; public indices are 1-based.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..errors import NotDivisible


def grlex_key(exp: tuple) -> tuple:
    return (sum(exp), exp)


def _div_coeff(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b) if a % b else a // b
    return a / b


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c}

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars, p.terms = nvars, terms
        return p

    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPoly":
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, k: int, c=1) -> "MultiPoly":
        e = [0] * nvars
        e[k - 1] = 1
        return cls._raw(nvars, {tuple(e): c})

    @classmethod
    def monomial(cls, exp, c=1) -> "MultiPoly":
        exp = tuple(exp)
        return cls._raw(len(exp), {exp: c} if c else {})

    # -- basic queries ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def homogeneous_part(self, m: int) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == m})

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly(self.nvars)
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if w:
                out[e] = w
        return MultiPoly._raw(self.nvars, out)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, m: int):
        out = MultiPoly.constant(self.nvars, 1)
        for _ in range(m):
            out = out * self
        return out

    def mul_var(self, k: int) -> "MultiPoly":
        """Multiply by x_k."""
        i = k - 1
        return MultiPoly._raw(
            self.nvars,
            {e[:i] + (e[i] + 1,) + e[i + 1:]: c for e, c in self.terms.items()},
        )

    def swap(self, k: int) -> "MultiPoly":
        """f^{s_k}: exchange x_k and x_{k+1}."""
        i = k - 1
        return MultiPoly._raw(
            self.nvars,
            {e[:i] + (e[i + 1], e[i]) + e[i + 2:]: c for e, c in self.terms.items()},
        )

    def permute(self, w) -> "MultiPoly":
        """f^w(x_1..x_d) = f(x_{w(1)}, ..., x_{w(d)}); w is a 1-based tuple."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for j, a in enumerate(e):
                ne[w[j] - 1] = a
            out[tuple(ne)] = c
        return MultiPoly._raw(self.nvars, out)

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if other == 0:
                return not self.terms
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{j + 1}" if a == 1 else f"x{j + 1}^{a}" for j, a in enumerate(e) if a
            )
            if not mono:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                cs = str(c)
                parts.append(f"({cs})*{mono}" if any(ch in cs for ch in "+/ ") else f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Return h with f = g*h, raising NotDivisible otherwise.

    Multivariate division by a single divisor in graded-lex order; when g
    divides f every step has a divisible leading term, so a stuck step
    proves non-divisibility.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lt_e, lt_c = g.leading_term()
    rem = dict(f.terms)
    quot = {}
    while rem:
        e, c = max(rem.items(), key=lambda t: grlex_key(t[0]))
        shift = tuple(a - b for a, b in zip(e, lt_e))
        if any(s < 0 for s in shift):
            raise NotDivisible(f"{f} is not divisible by {g}")
        qc = _div_coeff(c, lt_c)
        quot[shift] = qc
        for ge, gc in g.terms.items():
            te = tuple(a + b for a, b in zip(ge, shift))
            v = rem.get(te, 0) - qc * gc
            if v:
                rem[te] = v
            else:
                rem.pop(te, None)
    return MultiPoly(f.nvars, quot)


def demazure(f: MultiPoly, k: int) -> MultiPoly:
    """(f^{s_k} - f) / (x_k - x_{k+1}), via the closed form on monomials."""
    if not 1 <= k < f.nvars:
        raise IndexError(f"demazure index {k} out of range for {f.nvars} variables")
    i = k - 1
    out = {}
    for e, c in f.terms.items():
        a, b = e[i], e[i + 1]
        if a == b:
            continue
        lo = min(a, b)
        span = abs(a - b)
        sign_c = -c if a > b else c
        head, tail = e[:i], e[i + 2:]
        for j in range(span):
            ne = head + (lo + span - 1 - j, lo + j) + tail
            v = out.get(ne)
            out[ne] = sign_c if v is None else v + sign_c
    return MultiPoly(f.nvars, out)


def random_poly(nvars: int, max_degree: int, rng: random.Random, max_terms: int = 6,
                coeff_range: int = 9) -> MultiPoly:
    """Sparse random polynomial with integer coefficients, total degree <= max_degree."""
    nterms = rng.randint(1, max_terms)
    terms = {}
    for _ in range(nterms):
        deg = rng.randint(0, max_degree) if nvars else 0
        e = [0] * nvars
        for _ in range(deg):
            e[rng.randrange(nvars)] += 1
        c = rng.randint(-coeff_range, coeff_range) or 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return MultiPoly(nvars, terms)


def monomials_upto(nvars: int, max_degree: int):
    """All exponent vectors of total degree <= max_degree, in grlex ascending order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for a in range(remaining + 1):
            rec(prefix + [a], remaining - a, slots - 1)

    rec([], max_degree, nvars)
    return sorted(out, key=grlex_key)
