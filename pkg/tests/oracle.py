"""Independent references for the tests: sympy expressions in t, z."""
from __future__ import annotations

from fractions import Fraction

import sympy as sp

from localcalc.qfield import RatFun

t, z = sp.symbols("t z", positive=True)
q = t**2


def zeta(a, b, twist=1):
    """1 / (1 - twist * q^-(a s + b)) with z = q^-s."""
    return 1 / (1 - twist * z**a * q ** (-sp.Rational(b)))


def gamma(a, b):
    return zeta(-a, 1 - sp.Rational(b)) / zeta(a, b)


def to_sympy(f: RatFun):
    def poly(rows):
        return sum(sp.Rational(c.numerator, c.denominator) * t**e * z**i
                   for i, r in rows.items() for e, c in r.terms.items())

    return poly(f.numerator()) / poly(f.denominator())


def same(f: RatFun, expr) -> bool:
    return sp.cancel(sp.together(to_sympy(f) - expr)) == 0


def coeffs(expr, degree):
    """Power series coefficients in z of expr through z^degree, as t-expressions."""
    ser = sp.series(expr, z, 0, degree + 1).removeO()
    return {k: sp.simplify(ser.coeff(z, k)) for k in range(degree + 1)}


def coef_to_sympy(c):
    return sum(sp.Rational(v.numerator, v.denominator) * t**e for e, v in c.terms.items())
