from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from localcalc.rootdata import Weight, build_root_datum
from localcalc.vinberg import (
    central_order,
    center_of_simply_connected,
    doubling_monoid_units,
    kernel_of_central_character,
    sym_power_lambda,
    sym_power_monoid,
    unit_group_dual,
)


@pytest.mark.parametrize("n,label", [(2, "GL1xSL2"), (3, "GL2"), (10, "GL1xSL2")])
def test_sym_power_unit_groups(n, label):
    assert unit_group_dual(*sym_power_lambda(n)).label == label


@given(st.integers(1, 40))
def test_sym_power_parity(n):
    desc = unit_group_dual(*sym_power_lambda(n))
    assert desc.central_order == (1 if n % 2 == 0 else 2)
    assert desc.label == ("GL1xSL2" if n % 2 == 0 else "GL2")


@given(st.integers(0, 6), st.integers(0, 6))
def test_class_depends_only_on_root_lattice_coset_a2(a, b):
    d = build_root_datum("A", 2)
    lam = Weight.of([a + b, b, 0])
    # adding the root x1 - x3 keeps lambda dominant and in the same coset
    shifted = lam + Weight.of([1, 0, -1])
    assert unit_group_dual(d, lam).central_order == unit_group_dual(d, shifted).central_order


def test_center_and_kernel_orders():
    d = build_root_datum("A", 3)
    assert center_of_simply_connected(d) == [4]
    # omega_1 has order 4 in Z/4; omega_2 has order 2
    assert central_order(d, Weight.of([1, 0, 0, 0])) == 4
    assert central_order(d, Weight.of([1, 1, 0, 0])) == 2
    assert kernel_of_central_character(d, Weight.of([1, 1, 0, 0])) == [2]


def test_d4_vector_weight():
    d = build_root_datum("D", 4)
    desc = unit_group_dual(d, Weight.of([1, 0, 0, 0]))
    assert desc.center == (2, 2)
    assert desc.central_order == 2
    assert desc.kernel_subgroup == (2,)


def test_similitude_labels():
    assert unit_group_dual(build_root_datum("C", 2), Weight.of([1, 0])).label == "GSpin5"
    assert unit_group_dual(build_root_datum("B", 2), Weight.of([Fraction(1, 2)] * 2)).label == "GSp4"


def test_non_dominant_rejected():
    with pytest.raises(ValueError):
        unit_group_dual(build_root_datum("A", 1), Weight.of([0, 2]))


def test_sym_power_monoid_membership():
    m = sym_power_monoid(3)
    assert m.contains(2, [[2, 0], [0, 4]])
    assert not m.contains(2, [[1, 0], [0, 1]])


@pytest.mark.parametrize("c_sign,degree", [(1, 4), (-1, -4)])
def test_doubling_units_grading(c_sign, degree):
    u = doubling_monoid_units(4, c_sign=c_sign)
    assert u.degree(u.central_cocharacter()) == degree
    assert u.to_json()["c"] == ("det" if c_sign == 1 else "det^-1")
