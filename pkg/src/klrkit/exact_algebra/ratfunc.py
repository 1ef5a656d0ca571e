"""Rational functions in q, polynomials in u over Q(q), and the field Q(q)(u).

Everything here is exact.  Q[q] arithmetic is delegated to FLINT's
``fmpq_poly``; the field structure (canonical forms, gcd reduction,
coercion from ints and Fractions) is layered on top.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from flint import fmpq, fmpq_poly

_ONE = fmpq_poly([1])
_ZERO = fmpq_poly([])


def _as_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    if isinstance(c, Fraction):
        return fmpq(c.numerator, c.denominator)
    if isinstance(c, int):
        return fmpq(c)
    if isinstance(c, Rational):
        return fmpq(int(c.numerator), int(c.denominator))
    raise TypeError(f"not a rational number: {c!r}")


def _fmpq_to_fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class RationalFunctionQ:
    """An element of the field Q(q).

    Stored as ``num/den`` with ``den`` monic and ``gcd(num, den) = 1``, so two
    elements are equal iff their stored polynomials are equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([_as_fmpq(num)]) if num else fmpq_poly([])
        if den is None:
            self.num, self.den = num, _ONE
            return
        if not isinstance(den, fmpq_poly):
            den = fmpq_poly([_as_fmpq(den)])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(q)")
        self.num, self.den = _canonical(num, den)

    @classmethod
    def _raw(cls, num: fmpq_poly, den: fmpq_poly) -> "RationalFunctionQ":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def q(cls) -> "RationalFunctionQ":
        return cls._raw(fmpq_poly([0, 1]), _ONE)

    @classmethod
    def q_power(cls, m: int) -> "RationalFunctionQ":
        """q**m for any integer m."""
        mono = fmpq_poly([0] * abs(m) + [1])
        if m >= 0:
            return cls._raw(mono, _ONE)
        return cls._raw(_ONE, mono)

    @classmethod
    def coerce(cls, x) -> "RationalFunctionQ":
        if isinstance(x, RationalFunctionQ):
            return x
        return cls(x)

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.degree() <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return _fmpq_to_fraction(self.num[0]) if not self.num.is_zero() else Fraction(0)

    def as_q_power(self) -> tuple[Fraction, int] | None:
        """Return (c, m) if self == c*q**m, else None."""
        if self.num.is_zero():
            return None
        nc = [i for i, c in enumerate(self.num.coeffs()) if c != 0]
        dc = [i for i, c in enumerate(self.den.coeffs()) if c != 0]
        if len(nc) != 1 or len(dc) != 1:
            return None
        return _fmpq_to_fraction(self.num[nc[0]]), nc[0] - dc[0]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RationalFunctionQ):
            try:
                other = RationalFunctionQ(other)
            except TypeError:
                return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunctionQ._raw(self.num + other.num, _ONE)
        if self.den == other.den:
            return RationalFunctionQ(self.num + other.num, self.den)
        return RationalFunctionQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionQ._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunctionQ):
            try:
                other = RationalFunctionQ(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunctionQ):
            if isinstance(other, (int, Fraction, fmpq)):
                if not other:
                    return RationalFunctionQ._raw(fmpq_poly([]), _ONE)
                return RationalFunctionQ._raw(self.num * _as_fmpq(other), self.den)
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunctionQ._raw(self.num * other.num, _ONE)
        return RationalFunctionQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunctionQ":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return RationalFunctionQ(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunctionQ):
            if isinstance(other, (int, Fraction, fmpq)):
                if not other:
                    raise ZeroDivisionError("division by zero in Q(q)")
                return RationalFunctionQ._raw(self.num / _as_fmpq(other), self.den)
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunctionQ.coerce(other) * self.inverse()

    def __pow__(self, m: int):
        if m < 0:
            return self.inverse() ** (-m)
        return RationalFunctionQ._raw(self.num ** m, self.den ** m)

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionQ):
            try:
                other = RationalFunctionQ(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))

    def __call__(self, value):
        """Evaluate at q = value (a rational)."""
        v = _as_fmpq(value)
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError(f"pole at q={value}")
        return _fmpq_to_fraction(self.num(v) / d)

    # -- display ----------------------------------------------------------
    def __str__(self):
        n = _poly_str(self.num)
        if self.den.is_one():
            return n
        return f"({n})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"RationalFunctionQ({self})"

    def canonical_str(self) -> str:
        """"num/den" in canonical form, used by the JSON exports."""
        return f"{_poly_str(self.num)}/{_poly_str(self.den)}"


def _canonical(num: fmpq_poly, den: fmpq_poly) -> tuple[fmpq_poly, fmpq_poly]:
    if num.is_zero():
        return fmpq_poly([]), _ONE
    if den.degree() > 0:
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
    lc = den[den.degree()]
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def _poly_str(p: fmpq_poly, var: str = "q") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree(), -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = "-" + mono
        elif mono:
            s = f"{c}*{mono}"
        else:
            s = str(c)
        terms.append(s)
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


QQ_ZERO = RationalFunctionQ()
QQ_ONE = RationalFunctionQ(1)


class UPoly:
    """Univariate polynomial in u with Q(q) coefficients (low degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [RationalFunctionQ.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def u(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "UPoly":
        return cls((c,))

    @classmethod
    def linear_root(cls, point) -> "UPoly":
        """The monic polynomial u - point."""
        return cls((-RationalFunctionQ.coerce(point), 1))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> RationalFunctionQ:
        return self.coeffs[-1]

    def __add__(self, other):
        other = _as_upoly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_upoly(other))

    def __rsub__(self, other):
        return _as_upoly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunctionQ)):
            if not other:
                return UPoly()
            return UPoly([c * other for c in self.coeffs])
        other = _as_upoly(other)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [QQ_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, m: int):
        out = UPoly((1,))
        for _ in range(m):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _as_upoly(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dg = other.degree()
        lead_inv = other.leading().inverse()
        quot = [QQ_ZERO] * max(len(rem) - dg, 0)
        for pos in range(len(rem) - 1, dg - 1, -1):
            c = rem[pos]
            if not c:
                continue
            f = c * lead_inv
            quot[pos - dg] = f
            for j, b in enumerate(other.coeffs):
                if b:
                    rem[pos - dg + j] = rem[pos - dg + j] - f * b
        return UPoly(quot), UPoly(rem[:dg] if dg > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        lead = self.leading()
        if lead == QQ_ONE:
            return self
        inv = lead.inverse()
        return UPoly([c * inv for c in self.coeffs])

    def gcd(self, other) -> "UPoly":
        """Monic gcd (Euclid over the field Q(q))."""
        a, b = self, _as_upoly(other)
        while b.coeffs:
            a, b = b, a % b
        return a.monic()

    def __call__(self, x):
        acc = QQ_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "UPoly") -> "UPoly":
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + UPoly((c,))
        return acc

    def taylor_shift(self, point) -> "UPoly":
        """Coefficients of p(point + t) as a polynomial in t."""
        return self.compose(UPoly((point, 1)))

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            try:
                other = _as_upoly(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UPoly({self})"

    def __str__(self):
        """Highest power first, e.g. "u^2 + (-q^4 - q^2)*u + q^6"."""
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else "u" if k == 1 else f"u^{k}"
            cs = str(c)
            if not mono:
                terms.append(cs)
            elif c == QQ_ONE:
                terms.append(mono)
            elif c == -QQ_ONE:
                terms.append("-" + mono)
            elif any(ch in cs for ch in " /"):
                terms.append(f"({cs})*{mono}")
            else:
                terms.append(f"{cs}*{mono}")
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


def _as_upoly(x) -> UPoly:
    if isinstance(x, UPoly):
        return x
    if isinstance(x, (int, Fraction, RationalFunctionQ)):
        return UPoly((x,))
    raise TypeError(f"cannot treat {x!r} as a polynomial in u")


class RationalFunctionQU:
    """An element of Q(q)(u): num/den with den monic in u and gcd 1."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        num = _as_upoly(num) if not isinstance(num, UPoly) else num
        if den is None:
            self.num, self.den = num, UPoly((1,))
            return
        den = _as_upoly(den) if not isinstance(den, UPoly) else den
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(q)(u)")
        if num.is_zero():
            self.num, self.den = UPoly(), UPoly((1,))
            return
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num, den = num // g, den // g
        lead = den.leading()
        if lead != QQ_ONE:
            inv = lead.inverse()
            num = num * inv
            den = den * inv
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, x) -> "RationalFunctionQU":
        if isinstance(x, RationalFunctionQU):
            return x
        return cls(x)

    @classmethod
    def u(cls) -> "RationalFunctionQU":
        return cls(UPoly.u())

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def __add__(self, other):
        other = RationalFunctionQU.coerce(other)
        if self.den == other.den:
            return RationalFunctionQU(self.num + other.num, self.den)
        return RationalFunctionQU(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RationalFunctionQU.__new__(RationalFunctionQU)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        return self + (-RationalFunctionQU.coerce(other))

    def __rsub__(self, other):
        return RationalFunctionQU.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunctionQU.coerce(other)
        if not self.num or not other.num:
            return RationalFunctionQU()
        if self.den.degree() == 0 and other.den.degree() == 0:
            return RationalFunctionQU(self.num * other.num)
        return RationalFunctionQU(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, m: int):
        if m < 0:
            return self.inverse() ** (-m)
        out = RationalFunctionQU(1)
        for _ in range(m):
            out = out * self
        return out

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)(u)")
        return RationalFunctionQU(self.den, self.num)

    def __truediv__(self, other):
        return self * RationalFunctionQU.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunctionQU.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = RationalFunctionQU.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"pole at u={x}")
        return self.num(x) / d

    def order_at(self, point) -> int:
        """Order of vanishing at u = point (negative for a pole)."""
        lin = UPoly.linear_root(point)
        return _multiplicity(self.num, lin) - _multiplicity(self.den, lin)

    def split_at(self, point) -> tuple[int, "RationalFunctionQU"]:
        """Write self = (u - point)**m * h with h regular and nonzero at point."""
        if self.num.is_zero():
            raise ValueError("zero has no finite order")
        lin = UPoly.linear_root(point)
        num, den = self.num, self.den
        m = 0
        while True:
            qt, r = divmod(num, lin)
            if r:
                break
            num, m = qt, m + 1
        while True:
            qt, r = divmod(den, lin)
            if r:
                break
            den, m = qt, m - 1
        return m, RationalFunctionQU(num, den)

    def __str__(self):
        if self.den.degree() == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunctionQU({self})"


def _multiplicity(p: UPoly, lin: UPoly) -> int:
    if p.is_zero():
        raise ValueError("multiplicity of a root of the zero polynomial")
    m = 0
    while True:
        qt, r = divmod(p, lin)
        if r:
            return m
        p, m = qt, m + 1
