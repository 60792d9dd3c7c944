"""Unit groups of Vinberg-type monoids through lattice data.

The dual of the unit group attached to a dominant lambda is

    (G_m x G^sc) / {(omega_lambda(z), z) : z in Z}

with Z the center of the simply connected dual group and omega_lambda the
central character of lambda.  Everything reduces to the class of lambda in the
weight lattice modulo the root lattice, computed with Smith normal forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .rootdata import LatticeMap, RootDatum, Weight, build_root_datum, invariant_factors, smith_normal_form


def _nontrivial(factors: Sequence[int]) -> List[int]:
    return [abs(d) for d in factors if abs(d) != 1]


def center_of_simply_connected(datum: RootDatum) -> List[int]:
    """Invariant factors of P/Q; the rows of the Cartan matrix are the simple
    roots written in fundamental weights."""
    return _nontrivial(invariant_factors(LatticeMap.of(datum.cartan_matrix)))


def fundamental_coords(datum: RootDatum, lam: Weight) -> List[int]:
    out = []
    for a in datum.simple_roots:
        p = datum.pairing(lam, a)
        if p.denominator != 1:
            raise ValueError(f"{lam} is not integral")
        out.append(int(p))
    return out


def central_class(datum: RootDatum, lam: Weight) -> Tuple[List[int], List[int]]:
    """(invariant factors of P/Q, coordinates of lambda's class in them)."""
    cart = datum.cartan_matrix
    U, D, V = smith_normal_form(LatticeMap.of(cart))
    v = fundamental_coords(datum, lam)
    # row space of C equals row space of D V^-1, so v lives in Z^r / (D V^-1)
    w = [sum(v[i] * V[i][j] for i in range(len(v))) for j in range(len(V[0]))]
    diag = [D[i][i] for i in range(len(D))]
    return diag, [wi % d if d else wi for wi, d in zip(w, diag)]


def central_order(datum: RootDatum, lam: Weight) -> int:
    diag, cls = central_class(datum, lam)
    order = 1
    for d, c in zip(diag, cls):
        if d:
            k = d // gcd(d, c)
            order = order * k // gcd(order, k)
    return order


def kernel_of_central_character(datum: RootDatum, lam: Weight) -> List[int]:
    """Invariant factors of ker(omega_lambda), i.e. of (P/Q) / <lambda>."""
    rows = [list(r) for r in datum.cartan_matrix] + [fundamental_coords(datum, lam)]
    return _nontrivial(invariant_factors(LatticeMap.of(rows)))


def _order(factors: Sequence[int]) -> int:
    out = 1
    for d in factors:
        out *= d
    return out


_SC_NAMES = {"A": lambda r: f"SL{r + 1}", "B": lambda r: f"Spin{2 * r + 1}",
             "C": lambda r: f"Sp{2 * r}", "D": lambda r: f"Spin{2 * r}"}
_AD_DUAL = {"A": lambda r: f"SL{r + 1}", "B": lambda r: f"Sp{2 * r}",
            "C": lambda r: f"Spin{2 * r + 1}", "D": lambda r: f"Spin{2 * r}"}
_SIMILITUDE = {"A": lambda r: f"GL{r + 1}", "B": lambda r: f"GSp{2 * r}",
               "C": lambda r: f"GSpin{2 * r + 1}"}


@dataclass(frozen=True)
class DualGroupDesc:
    central_torus_rank: int
    cover: str
    center: Tuple[int, ...]
    kernel_subgroup: Tuple[int, ...]
    central_order: int
    label: str
    dual_label: str
    flat_assumed: bool = True

    def to_json(self) -> dict:
        return {
            "central_torus_rank": self.central_torus_rank,
            "semisimple_cover": self.cover,
            "center_invariant_factors": list(self.center),
            "kernel_invariant_factors": list(self.kernel_subgroup),
            "central_character_order": self.central_order,
            "unit_group": self.label,
            "dual_unit_group": self.dual_label,
            "flatness": "assumed",
        }


def unit_group_dual(datum: RootDatum, lam: Weight) -> DualGroupDesc:
    """Describe (G^lambda)^ from lambda's class modulo the root lattice."""
    if not datum.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    center = center_of_simply_connected(datum)
    kernel = kernel_of_central_character(datum, lam)
    order = central_order(datum, lam)
    assert _order(kernel) * order == _order(center)
    t, r = datum.cartan_type, datum.rank
    cover = _SC_NAMES[t](r)
    if _order(kernel) == _order(center):
        # omega_lambda trivial: dual is G_m x adjoint group, units are GL1 x simply connected
        label = f"GL1x{_AD_DUAL[t](r)}"
        dual = f"GmxPGL{r + 1}" if t == "A" else f"Gmx({cover})/center"
    elif _order(kernel) == 1 and len(center) <= 1 and t in _SIMILITUDE:
        label = _SIMILITUDE[t](r)
        dual = {"A": f"GL{r + 1}", "B": f"GSpin{2 * r + 1}", "C": f"GSp{2 * r}"}[t]
    else:
        label = f"(GmxGdual)/ker[{','.join(map(str, kernel)) or '1'}]"
        dual = label
    return DualGroupDesc(1, cover, tuple(center), tuple(kernel), order, label, dual)


def sym_power_lambda(n: int) -> Tuple[RootDatum, Weight]:
    """n * delta_1 on the SL2 side: the highest weight of Sym^n of the standard rep."""
    return build_root_datum("A", 1), Weight.of([n, 0])


@dataclass(frozen=True)
class MonoidDesc:
    abelianization_map: LatticeMap
    defining_equation: str
    n: int

    def contains(self, a, m: Sequence[Sequence]) -> bool:
        """Membership of (a, m) in {a^n = det m} over the rationals."""
        a = Fraction(a)
        rows = [[Fraction(x) for x in r] for r in m]
        return a ** self.n == _det(rows)

    def to_json(self) -> dict:
        return {"defining_equation": self.defining_equation,
                "abelianization_map": [list(r) for r in self.abelianization_map.matrix]}


def _det(m: List[List[Fraction]]) -> Fraction:
    m = [r[:] for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def sym_power_monoid(n: int) -> MonoidDesc:
    if n < 1:
        raise ValueError("n must be positive")
    # cocharacters (k; a, b) of G_m x T_GL2, grading by the G_m coordinate
    return MonoidDesc(LatticeMap.of([[1, 0, 0]]), f"a^{n} = det(m)", n)


@dataclass(frozen=True)
class DoublingUnits:
    n: int
    c_sign: int
    grading: LatticeMap
    g_rank: int

    def degree(self, cochar: Sequence[int]) -> int:
        return self.grading.apply(cochar)[0]

    def central_cocharacter(self) -> Tuple[int, ...]:
        return (1,) * self.n + (0,) * self.g_rank

    def to_json(self) -> dict:
        return {"n": self.n, "c": "det" if self.c_sign == 1 else "det^-1",
                "grading": [list(r) for r in self.grading.matrix],
                "central_degree": self.degree(self.central_cocharacter())}


def doubling_monoid_units(n: int, g_rank: int | None = None, c_sign: int = -1) -> DoublingUnits:
    """Units M_ab x G of the doubling monoid with the grading c on cocharacters.

    Cocharacters are (a_1..a_n; b_1..b_r): the diagonal torus of the Levi GL_n
    followed by a torus of G.  c = det (c_sign = 1) or det^-1 (c_sign = -1).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if c_sign not in (1, -1):
        raise ValueError("c_sign must be 1 or -1")
    r = n // 2 if g_rank is None else g_rank
    row = [c_sign] * n + [0] * r
    return DoublingUnits(n, c_sign, LatticeMap.of([row]), r)
