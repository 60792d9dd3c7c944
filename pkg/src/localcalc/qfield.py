"""Exact rational functions in z = q^(-s) with coefficients in Q[t, 1/t], t = q^(1/2).

Everything that depends on the residue field size q is written in the formal
variable t with t^2 = q, so half-integral shifts of s stay exact.  A RatFun is a
quotient of two Laurent polynomials in (z, t) kept in a canonical reduced form,
which makes equality of rational functions a plain comparison of dictionaries.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from sympy import Poly, QQ, symbols

_Z, _T = symbols("z t")

Bivar = Dict[Tuple[int, int], Fraction]


class PoleError(ArithmeticError):
    """A local zeta factor was asked for at a constant argument equal to 0."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


class CoefRing:
    """Laurent polynomial in t with rational coefficients.

    Instances are treated as immutable.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean: Dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _frac(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, c) -> "CoefRing":
        return cls({0: c})

    @classmethod
    def one(cls) -> "CoefRing":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "CoefRing":
        return cls()

    @classmethod
    def t_power(cls, e: int, c=1) -> "CoefRing":
        return cls({e: c})

    @classmethod
    def q_power(cls, x, c=1) -> "CoefRing":
        """c * q^x for a half-integer x."""
        e = Fraction(x) * 2
        if e.denominator != 1:
            raise ValueError(f"q-exponent {x} is not a half-integer")
        return cls({int(e): c})

    @staticmethod
    def coerce(x) -> "CoefRing":
        if isinstance(x, CoefRing):
            return x
        return CoefRing.const(x)

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def __add__(self, other) -> "CoefRing":
        other = CoefRing.coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return CoefRing(out)

    __radd__ = __add__

    def __neg__(self) -> "CoefRing":
        return CoefRing({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "CoefRing":
        return self + (-CoefRing.coerce(other))

    def __rsub__(self, other) -> "CoefRing":
        return CoefRing.coerce(other) - self

    def __mul__(self, other) -> "CoefRing":
        other = CoefRing.coerce(other)
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return CoefRing(out)

    __rmul__ = __mul__

    def inverse(self) -> "CoefRing":
        if not self.is_monomial():
            raise ValueError(f"{self} is not a unit of Q[t, 1/t]")
        (e, c), = self._terms.items()
        return CoefRing({-e: 1 / c})

    def __pow__(self, k: int) -> "CoefRing":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = CoefRing.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoefRing):
            try:
                other = CoefRing.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def to_json(self) -> list:
        return [[e, _frac_str(c)] for e, c in self.items()]

    @classmethod
    def from_json(cls, data) -> "CoefRing":
        return cls({int(e): Fraction(c) for e, c in data})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{c}*{mono}"
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"CoefRing({self})"


@dataclass(frozen=True)
class AffineExponent:
    """The affine form a*s + b, with b stored doubled so half-integers stay integral."""

    a: int
    b2: int

    @classmethod
    def of(cls, a: int, b) -> "AffineExponent":
        b2 = Fraction(b) * 2
        if b2.denominator != 1:
            raise ValueError(f"constant {b} is not a half-integer")
        return cls(int(a), int(b2))

    @property
    def b(self) -> Fraction:
        return Fraction(self.b2, 2)

    def one_minus(self) -> "AffineExponent":
        return AffineExponent(-self.a, 2 - self.b2)

    def __add__(self, other) -> "AffineExponent":
        if isinstance(other, AffineExponent):
            return AffineExponent(self.a + other.a, self.b2 + other.b2)
        return AffineExponent.of(self.a, self.b + Fraction(other))

    __radd__ = __add__

    def __neg__(self) -> "AffineExponent":
        return AffineExponent(-self.a, -self.b2)

    def __sub__(self, other) -> "AffineExponent":
        return self + (-other if isinstance(other, AffineExponent) else -Fraction(other))

    def __mul__(self, k: int) -> "AffineExponent":
        return AffineExponent(self.a * k, self.b2 * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.a == 0:
            return str(self.b)
        lead = {1: "s", -1: "-s"}.get(self.a, f"{self.a}s")
        if self.b2 == 0:
            return lead
        sign = "+" if self.b > 0 else "-"
        return f"{lead}{sign}{abs(self.b)}"


# ---------------------------------------------------------------------------
# bivariate Laurent helpers; keys are (z exponent, t exponent)


def _bmul(p: Bivar, q: Bivar) -> Bivar:
    out: Bivar = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _badd(p: Bivar, q: Bivar) -> Bivar:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def _bshift(p: Bivar, di: int, dj: int) -> Bivar:
    return {(i + di, j + dj): c for (i, j), c in p.items()}


def _bscale(p: Bivar, c: Fraction) -> Bivar:
    return {k: v * c for k, v in p.items()}


def _strip(p: Bivar) -> Tuple[int, int, Bivar]:
    """Split off the monomial content: p = z^i t^j * rest."""
    i0 = min(i for i, _ in p)
    j0 = min(j for _, j in p)
    return i0, j0, _bshift(p, -i0, -j0)


def _to_poly(p: Bivar) -> Poly:
    return Poly.from_dict({k: QQ(c.numerator, c.denominator) for k, c in p.items()},
                          _Z, _T, domain=QQ)


def _from_poly(P: Poly) -> Bivar:
    out: Bivar = {}
    for k, c in P.as_dict().items():
        if c:
            out[(int(k[0]), int(k[1]))] = Fraction(int(c.numerator), int(c.denominator))
    return out


def _is_unit(p: Bivar) -> bool:
    return len(p) == 1


def _gcd_cofactors(p: Bivar, q: Bivar) -> Tuple[Bivar, Bivar]:
    """p/g, q/g for g = gcd(p, q); both inputs carry no monomial content."""
    if _is_unit(p) or _is_unit(q):
        return p, q
    P, Q = _to_poly(p), _to_poly(q)
    G = P.gcd(Q)
    if G.total_degree() == 0:
        return p, q
    return _from_poly(P.exquo(G)), _from_poly(Q.exquo(G))


def _normalize(mono: Tuple[int, int], num: Bivar, den: Bivar) -> Tuple[Bivar, Bivar]:
    """Fix the unit: den has min z-degree 0 and its z^0 row starts with 1*t^0."""
    row0 = [j for (i, j) in den if i == 0]
    k = min(row0)
    r = den[(0, k)]
    num = _bscale(_bshift(num, mono[0], mono[1] - k), 1 / r)
    den = _bscale(_bshift(den, 0, -k), 1 / r)
    return num, den


def _reduce(num: Bivar, den: Bivar) -> Tuple[Bivar, Bivar]:
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return {}, {(0, 0): Fraction(1)}
    ni, nj, n0 = _strip(num)
    di, dj, d0 = _strip(den)
    n0, d0 = _gcd_cofactors(n0, d0)
    return _normalize((ni - di, nj - dj), n0, d0)


def _rows(p: Bivar) -> Dict[int, CoefRing]:
    rows: Dict[int, Dict[int, Fraction]] = {}
    for (i, j), c in p.items():
        rows.setdefault(i, {})[j] = c
    return {i: CoefRing(r) for i, r in sorted(rows.items())}


def _from_rows(rows: Mapping[int, object]) -> Bivar:
    out: Bivar = {}
    for i, r in rows.items():
        for j, c in CoefRing.coerce(r).items():
            out[(int(i), j)] = c
    return out


class RatFun:
    """Rational function in z over Q(t), stored in canonical reduced form.

    Canonical form: numerator and denominator are coprime Laurent polynomials;
    the denominator has lowest z-degree 0 and the lowest t-term of its z^0
    coefficient is exactly 1.  Two RatFuns are equal iff their forms coincide.
    """

    __slots__ = ("_num", "_den", "_key")

    def __init__(self, num: Mapping[int, object], den: Mapping[int, object] | None = None):
        n = _from_rows(num)
        d = _from_rows(den) if den is not None else {(0, 0): Fraction(1)}
        self._set(*_reduce(n, d))

    def _set(self, num: Bivar, den: Bivar) -> None:
        self._num = num
        self._den = den
        self._key = (tuple(sorted(num.items())), tuple(sorted(den.items())))

    @classmethod
    def _raw(cls, num: Bivar, den: Bivar) -> "RatFun":
        obj = cls.__new__(cls)
        obj._set(*_reduce(num, den))
        return obj

    @classmethod
    def _trusted(cls, num: Bivar, den: Bivar) -> "RatFun":
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def one(cls) -> "RatFun":
        return cls._trusted({(0, 0): Fraction(1)}, {(0, 0): Fraction(1)})

    @classmethod
    def const(cls, c) -> "RatFun":
        return cls({0: CoefRing.coerce(c)})

    @classmethod
    def zpow(cls, k: int, c=1) -> "RatFun":
        return cls({k: CoefRing.coerce(c)})

    @staticmethod
    def coerce(x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        return RatFun.const(x)

    def numerator(self) -> Dict[int, CoefRing]:
        return _rows(self._num)

    def denominator(self) -> Dict[int, CoefRing]:
        return _rows(self._den)

    def is_zero(self) -> bool:
        return not self._num

    def __add__(self, other) -> "RatFun":
        o = RatFun.coerce(other)
        if self._den == o._den:
            return RatFun._raw(_badd(self._num, o._num), self._den)
        num = _badd(_bmul(self._num, o._den), _bmul(o._num, self._den))
        return RatFun._raw(num, _bmul(self._den, o._den))

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun._trusted(_bscale(self._num, Fraction(-1)), self._den)

    def __sub__(self, other) -> "RatFun":
        return self + (-RatFun.coerce(other))

    def __rsub__(self, other) -> "RatFun":
        return RatFun.coerce(other) - self

    def __mul__(self, other) -> "RatFun":
        o = RatFun.coerce(other)
        if self.is_zero() or o.is_zero():
            return RatFun.const(0)
        # cross-cancel so the product needs no further gcd
        a_i, a_j, a = _strip(self._num)
        d_i, d_j, d = _strip(o._den)
        c_i, c_j, c = _strip(o._num)
        b_i, b_j, b = _strip(self._den)
        a, d = _gcd_cofactors(a, d)
        c, b = _gcd_cofactors(c, b)
        num = _bmul(a, c)
        den = _bmul(b, d)
        mono = (a_i + c_i - b_i - d_i, a_j + c_j - b_j - d_j)
        return RatFun._trusted(*_normalize(mono, num, den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun._raw(dict(self._den), dict(self._num))

    def __truediv__(self, other) -> "RatFun":
        return self * RatFun.coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFun":
        return RatFun.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFun":
        base = self if k >= 0 else self.inverse()
        out = RatFun.one()
        for _ in range(abs(k)):
            out = out * base
        return out

    def substitute(self, a: int = 1, c=0) -> "RatFun":
        """Replace s by a*s + c, i.e. z by z^a * t^(-2c)."""
        if a == 0:
            raise ValueError("substitution s -> c collapses the variable")
        c2 = Fraction(c) * 2
        if c2.denominator != 1:
            raise ValueError(f"shift {c} is not a half-integer")
        c2 = int(c2)

        def sub(p: Bivar) -> Bivar:
            return {(a * i, j - c2 * i): v for (i, j), v in p.items()}

        return RatFun._raw(sub(self._num), sub(self._den))

    def negate_s(self) -> "RatFun":
        return self.substitute(-1, 0)

    def shift_s(self, c) -> "RatFun":
        return self.substitute(1, c)

    def series(self, degree: int) -> Dict[int, CoefRing]:
        """Laurent expansion in z up to and including z^degree."""
        den = self.denominator()
        d0 = den.get(0)
        if d0 is None or not d0.is_monomial():
            raise ValueError("constant term of the denominator is not a unit of Q[t, 1/t]")
        inv0 = d0.inverse()
        num = self.numerator()
        if not num:
            return {}
        lo = min(num)
        out: Dict[int, CoefRing] = {}
        for k in range(lo, degree + 1):
            acc = num.get(k, CoefRing.zero())
            for j, dj in den.items():
                if j and (k - j) in out:
                    acc = acc - dj * out[k - j]
            acc = acc * inv0
            if not acc.is_zero():
                out[k] = acc
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            try:
                other = RatFun.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def to_json(self) -> dict:
        def enc(rows):
            return [[i, r.to_json()] for i, r in rows.items()]

        return {"num": enc(self.numerator()), "den": enc(self.denominator())}

    @classmethod
    def from_json(cls, data: Mapping) -> "RatFun":
        def dec(rows):
            return {int(i): CoefRing.from_json(r) for i, r in rows}

        return cls(dec(data["num"]), dec(data["den"]))

    def __str__(self) -> str:
        def poly(rows):
            if not rows:
                return "0"
            parts = []
            for i, r in rows.items():
                zs = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                body = str(r)
                if zs:
                    body = zs if body == "1" else f"({body})*{zs}"
                parts.append(body)
            return " + ".join(parts)

        num, den = poly(self.numerator()), poly(self.denominator())
        return num if den == "1" else f"({num}) / ({den})"

    def __repr__(self) -> str:
        return f"RatFun({self})"


def zeta_local(e: AffineExponent, twist=1) -> RatFun:
    """The Euler factor 1 / (1 - twist * q^(-e(s))), with q^(-s) = z.

    With twist = chi(uniformizer) this is the Hecke-Tate factor L(e(s), chi).
    """
    twist = CoefRing.coerce(twist)
    den_row = twist * CoefRing.t_power(-e.b2)
    if e.a == 0:
        d = CoefRing.one() - den_row
        if d.is_zero():
            raise PoleError(f"zeta factor has a pole at the constant argument {e}")
        return RatFun({0: CoefRing.one()}, {0: d})
    return RatFun({0: CoefRing.one()}, {0: CoefRing.one(), e.a: -den_row})


def gamma_local(e: AffineExponent) -> RatFun:
    """gamma(T) = zeta(1 - T) / zeta(T)."""
    return zeta_local(e.one_minus()) / zeta_local(e)


# ---------------------------------------------------------------------------
# Tate shells.  psi is unramified with conductor the integers, dx self-dual,
# so vol(p^m) = q^(-m) and psi is trivial on p^m exactly when m >= 0.


def ball_integral(m: int) -> CoefRing:
    """Integral of psi over the ball p^m."""
    if m >= 0:
        return CoefRing.t_power(-2 * m)
    # a nontrivial character integrates to zero over a compact group
    return CoefRing.zero()


def shell_integral(n: int) -> CoefRing:
    """Integral of psi over the shell v(x) = n, as ball(n) minus ball(n + 1)."""
    return ball_integral(n) - ball_integral(n + 1)


def tate_shell_series(s0, truncation: int) -> Dict[int, CoefRing]:
    """Coefficients c_n of z^n in sum_n z^n * integral over |x| = q^(-n) of |x|^s0 psi(x) dx.

    Shells with n <= -2 vanish, so the series starts at n = -1.
    """
    x2 = Fraction(s0) * 2
    if x2.denominator != 1:
        raise ValueError(f"exponent {s0} is not a half-integer")
    out: Dict[int, CoefRing] = {}
    for n in range(-truncation, truncation + 1):
        c = shell_integral(n) * CoefRing.t_power(-n * int(x2))
        if not c.is_zero():
            out[n] = c
    return out


def _monomial_ratio(a: CoefRing, b: CoefRing) -> CoefRing | None:
    """The monomial m with a = m * b, if there is one."""
    if a.is_zero() or b.is_zero():
        return None
    e = a.max_exp() - b.max_exp()
    m = CoefRing.t_power(e, a.terms[a.max_exp()] / b.terms[b.max_exp()])
    return m if m * b == a else None


def tate_collapse(e: AffineExponent, check_depth: int = 12) -> RatFun:
    """Sum over all shells of q^(-n e(s)) * (integral of psi over the shell).

    The sum is closed up from the computed shell values: the shells below -1
    are checked to vanish and the tail n >= 0 is checked to be geometric.
    """
    shells = {n: shell_integral(n) for n in range(-check_depth, check_depth + 1)}
    for n, v in shells.items():
        if n <= -2 and not v.is_zero():
            raise AssertionError(f"shell {n} does not vanish")
    ratio = _monomial_ratio(shells[1], shells[0])
    if ratio is None:
        raise AssertionError("nonnegative shells are not geometric")
    for n in range(1, check_depth):
        if shells[n + 1] != shells[n] * ratio:
            raise AssertionError(f"shell {n + 1} breaks the geometric tail")
    w = RatFun({e.a: CoefRing.t_power(-e.b2)})
    head = RatFun.const(shells[-1]) / w
    tail = RatFun.const(shells[0]) / (RatFun.one() - RatFun.const(ratio) * w)
    return head + tail
