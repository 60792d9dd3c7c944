from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from localcalc.doubling import (
    ConsistencyError,
    DoublingCase,
    SatakeParamStd,
    a_H,
    d_H,
    eta_factor,
    eta_gamma_product,
    eta_ratio,
    fixed_point_sides,
    m_ratio,
    m_reduced_product,
    m_root_product,
    m_scalar,
    modulus_exponent,
    normalized_identity,
    shifted_a_H,
    unramified_gamma_std,
)
from localcalc.qfield import CoefRing, RatFun

import oracle
from oracle import gamma as G, zeta as Z

half = Fraction(1, 2)


def all_cases(n_max=8):
    for n in range(0, n_max + 1):
        if n >= 2 and n % 2 == 0:
            yield DoublingCase("symplectic", n)
        yield DoublingCase("orthogonal_even" if n % 2 == 0 else "orthogonal_odd", n)


# -- closed forms at small n, checked against sympy ------------------------------

def test_symplectic_two():
    c = DoublingCase("symplectic", 2)
    # d_H(s) = L(s + 3/2) zeta(2s + 1); (chi_s, x1 + x2) = 2s and (chi_s, x1) = s - 1/2
    assert oracle.same(d_H(c), Z(1, Fraction(3, 2)) * Z(2, 1))
    assert oracle.same(a_H(c), Z(2, 0) * Z(1, -half))
    assert a_H(c) == RatFun({0: 1}, {0: 1, 1: CoefRing.t_power(1, -1), 2: -1, 3: CoefRing.t_power(1)})
    assert oracle.same(eta_factor(c), G(2, 0) * G(1, -half))
    assert oracle.same(m_scalar(c), Z(2, 0) * Z(1, -half) / (Z(1, Fraction(3, 2)) * Z(2, 1)))


def test_orthogonal_two():
    c = DoublingCase("orthogonal_even", 2)
    assert oracle.same(d_H(c), Z(2, 1))
    assert oracle.same(a_H(c), Z(2, 0))
    assert oracle.same(m_scalar(c), Z(2, 0) / Z(2, 1))
    assert oracle.same(eta_factor(c), G(2, 0))


def test_orthogonal_odd_three():
    c = DoublingCase("orthogonal_odd", 3)
    assert oracle.same(d_H(c), Z(2, 2))
    # (chi_s, x1 + x2) = 2s - 1 for n = 3
    assert oracle.same(a_H(c), Z(2, -1))


def test_symplectic_two_fixed_point_rhs():
    # d_H(1/2 - s) = zeta(2 - s) zeta(2 - 2s)
    _, rhs = fixed_point_sides(DoublingCase("symplectic", 2))
    assert oracle.same(rhs, Z(-1, 2) * Z(-2, 2))


def test_hermitian_d_H():
    # quadratic unramified character takes -1 on the uniformizer
    c = DoublingCase("hermitian", 2)
    assert oracle.same(d_H(c), Z(2, 1, twist=-1) * Z(2, 2))
    with pytest.raises(NotImplementedError):
        a_H(c)


def test_trivial_group_edge_case():
    c = DoublingCase("orthogonal_even", 0)
    assert d_H(c) == RatFun.one() and a_H(c) == RatFun.one() and eta_factor(c) == RatFun.one()


def test_twisted_d_H():
    c = DoublingCase("orthogonal_even", 2, chi_t=1, chi_sign=-1)
    assert oracle.same(d_H(c), Z(2, 1, twist=oracle.t**2))


# -- identities over all cases ----------------------------------------------------

@pytest.mark.parametrize("case", list(all_cases()), ids=lambda c: f"{c.kind}-{c.n}")
def test_m_three_routes(case):
    assert m_ratio(case) == m_reduced_product(case) == m_root_product(case)


@pytest.mark.parametrize("case", list(all_cases()), ids=lambda c: f"{c.kind}-{c.n}")
def test_eta_two_routes_and_normalization(case):
    assert eta_ratio(case) == eta_gamma_product(case)
    assert normalized_identity(case) == RatFun.one()


@pytest.mark.parametrize("case", list(all_cases()), ids=lambda c: f"{c.kind}-{c.n}")
def test_fixed_point(case):
    lhs, rhs = fixed_point_sides(case)
    assert lhs == rhs


def test_shifted_a_H_only_in_orthogonal_even():
    for case in all_cases():
        holds = a_H(case) == shifted_a_H(case)
        if case.kind == "orthogonal_even" or (case.kind == "orthogonal_odd" and case.n == 1):
            assert holds
        else:
            assert not holds


def test_modulus_exponents():
    assert [modulus_exponent(DoublingCase("symplectic", n)) for n in (2, 4, 6, 8)] == [3, 5, 7, 9]
    assert [modulus_exponent(DoublingCase("orthogonal_even", n)) for n in (2, 4, 6)] == [1, 3, 5]
    assert modulus_exponent(DoublingCase("orthogonal_odd", 5)) == 4


def test_consistency_error_on_tampered_m():
    c = DoublingCase("symplectic", 4)
    assert normalized_identity(c, m=-m_root_product(c)) != RatFun.one()


@pytest.mark.parametrize("kind,n", [("symplectic", 3), ("symplectic", 0), ("orthogonal_even", 3),
                                    ("orthogonal_odd", 2), ("unitary", 2)])
def test_invalid_cases(kind, n):
    with pytest.raises(ValueError):
        DoublingCase(kind, n)


def test_a_H_needs_trivial_chi():
    with pytest.raises(ValueError):
        a_H(DoublingCase("symplectic", 2, chi_t=1))


# -- standard gamma factors -----------------------------------------------------

@given(st.sampled_from([("symplectic", 2), ("symplectic", 4), ("orthogonal_even", 4), ("orthogonal_odd", 3),
                        ("orthogonal_odd", 5)]), st.data())
@settings(max_examples=15, deadline=None)
def test_unramified_gamma_chain(kn, data):
    kind, n = kn
    coords = tuple(CoefRing.t_power(data.draw(st.integers(-3, 3))) for _ in range(n // 2))
    res = unramified_gamma_std(DoublingCase(kind, n), SatakeParamStd(kind, n, coords))
    assert res["chain"] and res["self_dual"]


def test_satake_eigenvalue_convention():
    p = SatakeParamStd("symplectic", 4, (CoefRing.t_power(2), CoefRing.t_power(-1)))
    assert sorted(x.min_exp() for x in p.eigenvalues()) == [-2, -1, 0, 1, 2]
    p = SatakeParamStd("orthogonal_even", 4, (CoefRing.t_power(2), CoefRing.t_power(-1)))
    assert len(p.eigenvalues()) == 4
    with pytest.raises(ValueError):
        SatakeParamStd("symplectic", 4, (CoefRing.t_power(1),))
