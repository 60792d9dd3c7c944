"""Scalar calculus of the doubling construction for unramified data.

n is always the size of the Siegel Levi GL_n of the doubled group H.  All
objects are RatFuns in z = q^(-s).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .qfield import AffineExponent, CoefRing, RatFun, gamma_local, zeta_local
from .rootdata import Weight, build_root_datum, chi_s_pairing

KINDS = ("symplectic", "orthogonal_even", "orthogonal_odd", "hermitian")


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class DoublingCase:
    kind: str
    n: int
    chi_t: int = 0      # chi(uniformizer) = chi_sign * t^chi_t
    chi_sign: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown case {self.kind!r}")
        if self.chi_sign not in (1, -1):
            raise ValueError("chi_sign must be +1 or -1")
        n = self.n
        if self.kind == "symplectic" and (n < 2 or n % 2):
            raise ValueError("symplectic case needs an even n >= 2")
        if self.kind == "orthogonal_even" and (n < 0 or n % 2):
            raise ValueError("orthogonal_even needs an even n >= 0")
        if self.kind == "orthogonal_odd" and (n < 1 or n % 2 == 0):
            raise ValueError("orthogonal_odd needs an odd n >= 1")
        if self.kind == "hermitian" and n < 1:
            raise ValueError("hermitian case needs n >= 1")

    @property
    def chi(self) -> CoefRing:
        return CoefRing.t_power(self.chi_t, self.chi_sign)

    @property
    def trivial_chi(self) -> bool:
        return self.chi_t == 0 and self.chi_sign == 1

    @property
    def is_symplectic(self) -> bool:
        return self.kind == "symplectic"

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "chi_t": self.chi_t, "chi_sign": self.chi_sign}


def _L(a: int, b, twist) -> RatFun:
    return zeta_local(AffineExponent.of(a, b), twist)


def d_H(case: DoublingCase) -> RatFun:
    """The unwanted denominator of the unramified zeta integral."""
    n, chi = case.n, case.chi
    chi2 = chi * chi
    out = RatFun.one()
    if case.kind == "symplectic":
        out = _L(1, Fraction(n + 1, 2), chi)
        for j in range(1, n // 2 + 1):
            out = out * _L(2, 2 * j - 1, chi2)
    elif case.kind == "orthogonal_even":
        for j in range(1, n // 2 + 1):
            out = out * _L(2, 2 * j - 1, chi2)
    elif case.kind == "orthogonal_odd":
        for j in range(1, (n - 1) // 2 + 1):
            out = out * _L(2, 2 * j, chi2)
    else:
        # restriction of chi to F^*, times the unramified quadratic character (-1 at the uniformizer)
        for j in range(1, n + 1):
            out = out * _L(2, j, chi * (-1) ** (n - j))
    return out


def _x(n: int, *idx: int) -> Weight:
    v = [0] * n
    for i in idx:
        v[i - 1] += 1
    return Weight.of(v)


def _require(case: DoublingCase) -> None:
    if case.kind == "hermitian":
        raise NotImplementedError("only d_H is implemented for the hermitian case")
    if not case.trivial_chi:
        raise ValueError("a_H, m and eta are defined at trivial chi")


def _zp(n: int, coroot: Weight, shift: int = 0) -> AffineExponent:
    return chi_s_pairing(n, coroot) + shift


def a_H(case: DoublingCase) -> RatFun:
    _require(case)
    n = case.n
    out = RatFun.one()
    for l in range(1, n // 2 + 1):
        out = out * zeta_local(_zp(n, _x(n, l, l + 1)))
    if case.is_symplectic:
        out = out * zeta_local(_zp(n, _x(n, 1)))
    return out


def siegel_coroots(case: DoublingCase) -> List[Weight]:
    """Coroots of the roots in the unipotent radical of the Siegel parabolic of H."""
    _require(case)
    n = case.n
    if n == 0:
        return []
    if case.is_symplectic:
        datum = build_root_datum("C", n)
    elif n >= 2:
        datum = build_root_datum("D", n)
    else:
        return []
    return [datum.coroot(a) for a in datum.positive_roots if sum(a.coords) > 0]


def rho_epsilon1_doubled(case: DoublingCase) -> int:
    """<2 rho_P, epsilon_1>, read off from the roots of the Siegel radical."""
    _require(case)
    n = case.n
    if n == 0:
        return 0
    datum = build_root_datum("C", n) if case.is_symplectic else (
        build_root_datum("D", n) if n >= 2 else None)
    if datum is None:
        return 0
    total = sum((a.coords[0] for a in datum.positive_roots if sum(a.coords) > 0), Fraction(0))
    return int(total)


def modulus_exponent(case: DoublingCase) -> Fraction:
    """e with delta_P = |det|^e on the Levi GL_n: the sum of all root degrees over n."""
    _require(case)
    n = case.n
    if n == 0:
        return Fraction(0)
    datum = build_root_datum("C", n) if case.is_symplectic else (
        build_root_datum("D", n) if n >= 2 else None)
    if datum is None:
        return Fraction(0)
    total = sum((sum(a.coords) for a in datum.positive_roots if sum(a.coords) > 0), Fraction(0))
    return total / n


def m_ratio(case: DoublingCase) -> RatFun:
    return a_H(case) / d_H(case)


def m_reduced_product(case: DoublingCase) -> RatFun:
    """Telescoped product: numerators at adjacent pairs, denominators at pairs ending in x_n."""
    _require(case)
    n = case.n
    out = RatFun.one()
    for l in range(1, n // 2 + 1):
        out = out * zeta_local(_zp(n, _x(n, l, l + 1)))
    for l in range(1, n):
        if (n - 1 - l) % 2 == 0:
            out = out / zeta_local(_zp(n, _x(n, l, n), 1))
    if case.is_symplectic:
        out = out * zeta_local(_zp(n, _x(n, 1))) / zeta_local(_zp(n, _x(n, n), 1))
    return out


def m_root_product(case: DoublingCase) -> RatFun:
    """Product over the Siegel radical of zeta((chi_s, a^vee)) / zeta(1 + (chi_s, a^vee))."""
    n = case.n
    out = RatFun.one()
    for cr in siegel_coroots(case):
        e = _zp(n, cr)
        out = out * zeta_local(e) / zeta_local(e + 1)
    return out


def m_scalar(case: DoublingCase) -> RatFun:
    ratio = m_ratio(case)
    if ratio != m_reduced_product(case):
        raise ConsistencyError(f"m(s): ratio and reduced product differ for {case}")
    if ratio != m_root_product(case):
        raise ConsistencyError(f"m(s): ratio and root product differ for {case}")
    return ratio


def eta_ratio(case: DoublingCase) -> RatFun:
    return d_H(case).negate_s() / a_H(case)


def eta_gamma_product(case: DoublingCase) -> RatFun:
    _require(case)
    n = case.n
    out = RatFun.one()
    for l in range(1, n // 2 + 1):
        out = out * gamma_local(_zp(n, _x(n, l, l + 1)))
    if case.is_symplectic:
        out = out * gamma_local(_zp(n, _x(n, 1)))
    return out


def eta_factor(case: DoublingCase) -> RatFun:
    ratio = eta_ratio(case)
    if ratio != eta_gamma_product(case):
        raise ConsistencyError(f"eta(s): ratio and gamma product differ for {case}")
    return ratio


def normalized_identity(case: DoublingCase, m: RatFun | None = None,
                        eta: RatFun | None = None) -> RatFun:
    """m(s) eta(s) d_H(s) / d_H(-s); equals 1."""
    m = m_root_product(case) if m is None else m
    eta = eta_gamma_product(case) if eta is None else eta
    dh = d_H(case)
    return m * eta * dh / dh.negate_s()


def shifted_a_H(case: DoublingCase) -> RatFun:
    """d_H(s - <rho, epsilon_1>) with the exponent taken from the Siegel radical."""
    return d_H(case).shift_s(-Fraction(rho_epsilon1_doubled(case), 2))


def fixed_point_sides(case: DoublingCase) -> Tuple[RatFun, RatFun]:
    """(eta(s-1/2) m(s-1/2) d_H(s-1/2), d_H(1/2-s))."""
    half = Fraction(1, 2)
    lhs = (eta_gamma_product(case) * m_root_product(case) * d_H(case)).shift_s(-half)
    rhs = d_H(case).substitute(-1, half)
    return lhs, rhs


def doubling_basic_and_fixedpoint(case: DoublingCase) -> dict:
    """Scalar form of the basic function and of its Fourier fixed point.

    The basic function is d_H(s - 1/2) times the normalized spherical section,
    which is tracked only through its value 1 at the identity.
    """
    from .bk import dbar_H  # the P-bar side lives with the nilpotent data

    lhs, rhs = fixed_point_sides(case)
    dh = d_H(case)
    dbar = dbar_H(case.n, "sp" if case.is_symplectic else "o")
    report = {
        "basic_scalar": dh.shift_s(Fraction(-1, 2)),
        "spherical_value_at_identity": 1,
        "fixed_point_lhs": lhs,
        "fixed_point_rhs": rhs,
        "fixed_point": lhs == rhs,
        "duality": dbar == dh.negate_s(),
    }
    if not (report["fixed_point"] and report["duality"]):
        raise ConsistencyError(f"fixed point or duality fails for {case}")
    return report


# ---------------------------------------------------------------------------
# unramified gamma factors of the standard L-function


@dataclass(frozen=True)
class SatakeParamStd:
    """Satake data x_1..x_k (k = floor(n/2)) of an unramified pi of G.

    The standard parameter has eigenvalues x_i^(+-1), plus 1 when the standard
    representation of the dual side has odd dimension.
    """

    kind: str
    n: int
    coords: Tuple[CoefRing, ...]

    def __post_init__(self):
        if len(self.coords) != self.n // 2:
            raise ValueError(f"expected {self.n // 2} Satake coordinates")
        for x in self.coords:
            if not x.is_monomial():
                raise ValueError("Satake coordinates must be units of Q[t, 1/t]")

    def eigenvalues(self) -> List[CoefRing]:
        out = []
        for x in self.coords:
            out += [x, x.inverse()]
        if self.kind in ("symplectic", "orthogonal_odd"):
            out.append(CoefRing.one())
        return out


def std_lfunction(params: SatakeParamStd, e: AffineExponent, contragredient: bool = False) -> RatFun:
    out = RatFun.one()
    for x in params.eigenvalues():
        out = out * zeta_local(e, x.inverse() if contragredient else x)
    return out


def unramified_gamma_std(case: DoublingCase, params: SatakeParamStd) -> dict:
    """gamma(s) = L(1-s, pi~)/L(s, pi), Gamma(s - 1/2) = gamma(s)/eta(s - 1/2),
    and the same gamma rebuilt from m, d_H and the zeta-integral relation."""
    if (params.kind, params.n) != (case.kind, case.n):
        raise ValueError("Satake data and doubling case disagree")
    half = Fraction(1, 2)
    s = AffineExponent.of(1, 0)
    gamma = std_lfunction(params, s.one_minus(), True) / std_lfunction(params, s)
    eta = eta_gamma_product(case)
    big_gamma_shifted = gamma / eta.shift_s(-half)  # Gamma(s - 1/2)
    # Gamma(s) from m(s) d_H(-s)^-1 L(1/2 - s, pi~) = Gamma(s) L(s + 1/2, pi) d_H(s)^-1
    m, dh = m_root_product(case), d_H(case)
    l_dual = std_lfunction(params, AffineExponent.of(-1, half), True)
    l_plus = std_lfunction(params, AffineExponent.of(1, half))
    big_gamma = m * dh * l_dual / (dh.negate_s() * l_plus)
    rebuilt = (big_gamma * eta).shift_s(-half)
    return {
        "gamma": gamma,
        "Gamma_shifted": big_gamma_shifted,
        "chain": rebuilt == gamma and big_gamma.shift_s(-half) == big_gamma_shifted,
        "self_dual": gamma * gamma.substitute(-1, 1) == RatFun.one(),
    }
