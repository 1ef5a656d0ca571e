"""Conversions from klrkit's exact types to sympy expressions, used as test oracles."""

import sympy

q, u = sympy.symbols("q u")


def rq(f):
    num = sum(sympy.Rational(int(c.p), int(c.q)) * q**i for i, c in enumerate(f.num.coeffs()))
    den = sum(sympy.Rational(int(c.p), int(c.q)) * q**i for i, c in enumerate(f.den.coeffs()))
    return num / den


def qu(f):
    num = sum(rq(c) * u**i for i, c in enumerate(f.num.coeffs))
    den = sum(rq(c) * u**i for i, c in enumerate(f.den.coeffs))
    return num / den


def series_terms(expr, gens, order):
    """Total-degree truncation of the Taylor expansion of expr at gens = 0."""
    t = sympy.Symbol("t_scale")
    scaled = expr.subs({g: t * g for g in gens}, simultaneous=True)
    ser = sympy.series(scaled, t, 0, order + 1).removeO().subs(t, 1)
    poly = sympy.Poly(sympy.expand(ser), *gens)
    return {m: sympy.factor(c) for m, c in zip(poly.monoms(), poly.coeffs()) if sum(m) <= order}
