"""Weight multiplicities, symmetric powers and the combinatorics of basic functions.

Satake coordinates are weights: the monomial x^mu of a character is stored
under the Weight mu, and the extra central coordinate of the G_m factor is the
weight's degree.  Every weight of a representation built here carries degree 1,
so Sym^d lands in degree d.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .qfield import CoefRing
from .rootdata import RootDatum, Weight, half_sum_positive, weyl_dimension


class CharacterPoly:
    """Laurent polynomial in the Satake coordinates with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Weight, int] | None = None):
        self._terms = {w: int(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, dim: int) -> "CharacterPoly":
        return cls({Weight.zero(dim): 1})

    @property
    def terms(self) -> Dict[Weight, int]:
        return dict(self._terms)

    def __add__(self, other: "CharacterPoly") -> "CharacterPoly":
        out = Counter(self._terms)
        out.update(other._terms)
        return CharacterPoly(out)

    def __neg__(self) -> "CharacterPoly":
        return CharacterPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "CharacterPoly") -> "CharacterPoly":
        return self + (-other)

    def __mul__(self, other) -> "CharacterPoly":
        if isinstance(other, int):
            return CharacterPoly({w: c * other for w, c in self._terms.items()})
        out: Counter = Counter()
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                out[w1 + w2] += c1 * c2
        return CharacterPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, CharacterPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, w: Weight) -> int:
        return self._terms.get(w, 0)

    def evaluate_dimension(self) -> int:
        return sum(self._terms.values())

    def is_weyl_symmetric(self, datum: RootDatum) -> bool:
        for w, c in self._terms.items():
            for a in datum.simple_roots:
                if self._terms.get(datum.reflect(a, w), 0) != c:
                    return False
        return True

    def to_json(self) -> list:
        return [[[str(c) for c in w.coords], w.degree, k] for w, k in sorted(self._terms.items())]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*[{w.label()};{w.degree}]" for w, c in sorted(self._terms.items()))

    def __repr__(self) -> str:
        return f"CharacterPoly({self})"


@dataclass(frozen=True)
class RepTable:
    datum: RootDatum
    highest_weight: Weight
    mult: Tuple[Tuple[Weight, int], ...]

    @property
    def multiplicities(self) -> Dict[Weight, int]:
        return dict(self.mult)

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.mult)

    def basis(self) -> List[Weight]:
        """Weights repeated according to multiplicity, one entry per basis vector."""
        return [w for w, m in self.mult for _ in range(m)]

    def character(self) -> CharacterPoly:
        return CharacterPoly(dict(self.mult))

    def to_json(self) -> dict:
        return {
            "highest_weight": self.highest_weight.to_json(),
            "dimension": self.dimension,
            "weights": [[[str(c) for c in w.coords], m] for w, m in self.mult],
        }


def _is_weight_of(datum: RootDatum, lam: Weight, mu: Weight) -> bool:
    top = datum.dominant_conjugate(mu)
    coeffs = datum.simple_root_coords(lam - top)
    return coeffs is not None and all(c >= 0 and c.denominator == 1 for c in coeffs)


def weight_multiplicities(datum: RootDatum, highest_weight: Weight, degree: int = 1) -> RepTable:
    """Multiplicity table of the irreducible module of the given highest weight.

    Freudenthal's recursion, run level by level below the highest weight.
    All weights are tagged with the given central degree.
    """
    lam = highest_weight.with_degree(0)
    if lam.dim != datum.dim or not datum.is_dominant(lam):
        raise ValueError(f"{highest_weight} is not a dominant weight for {datum.cartan_type}{datum.rank}")
    rho = half_sum_positive(datum)
    norm = (lam + rho).dot(lam + rho)
    mult: Dict[Weight, int] = {lam: 1}
    level = [lam]
    while level:
        cand = set()
        for mu in level:
            for a in datum.simple_roots:
                nu = mu - a
                if nu not in mult and _is_weight_of(datum, lam, nu):
                    cand.add(nu)
        found = {}
        for nu in sorted(cand):
            acc = Fraction(0)
            for a in datum.positive_roots:
                k = 1
                while (w := nu + a.scale(k)) in mult:
                    acc += mult[w] * w.dot(a)
                    k += 1
            m = 2 * acc / (norm - (nu + rho).dot(nu + rho))
            if m.denominator != 1:
                raise ArithmeticError(f"non-integral multiplicity at {nu}")
            if m:
                found[nu] = int(m)
        mult.update(found)
        level = list(found)
    table = tuple(sorted((w.with_degree(degree), m) for w, m in mult.items()))
    return RepTable(datum, lam.with_degree(degree), table)


def standard_highest_weight(datum: RootDatum) -> Weight:
    return Weight.basis(datum.dim, 0)


def highest_root(datum: RootDatum) -> Weight:
    rho = half_sum_positive(datum)
    dom = [a for a in datum.positive_roots if datum.is_dominant(a)]
    return max(dom, key=lambda a: (a.dot(rho), a))


def named_rep(datum: RootDatum, name: str, degree: int = 1) -> RepTable:
    if name == "std":
        hw = standard_highest_weight(datum)
    elif name == "trivial":
        hw = Weight.zero(datum.dim)
    elif name == "adjoint":
        hw = highest_root(datum)
    else:
        raise ValueError(f"unknown representation {name!r}")
    return weight_multiplicities(datum, hw, degree)


def sym_power_trace(rep: RepTable, d: int) -> CharacterPoly:
    """Character of Sym^d: one monomial per d-element multiset of basis vectors."""
    if d < 0:
        raise ValueError("negative symmetric power")
    # choose a multiplicity for each basis vector in turn, tracking size and weight
    states: Counter = Counter({(0, (0,) * rep.datum.dim): 1})
    for w in rep.basis():
        nxt: Counter = Counter()
        for (size, coords), ways in states.items():
            cur = coords
            for k in range(d - size + 1):
                nxt[(size + k, cur)] += ways
                cur = tuple(a + b for a, b in zip(cur, w.coords2))
        states = nxt
    return CharacterPoly({Weight(c, d * rep.highest_weight.degree): m
                          for (size, c), m in states.items() if size == d})


@dataclass(frozen=True)
class StandardLFactor:
    """det(1 - rho(sigma) z)^(-1) as 1 over a polynomial in z with character coefficients."""

    rep: RepTable

    def denominator(self) -> List[CharacterPoly]:
        dim = self.rep.datum.dim
        poly = [CharacterPoly.one(dim)]
        for w in self.rep.basis():
            nxt = poly + [CharacterPoly()]
            mono = CharacterPoly({w: 1})
            for k in range(len(poly)):
                nxt[k + 1] = nxt[k + 1] - poly[k] * mono
            poly = nxt
        return poly

    def series(self, degree: int) -> List[CharacterPoly]:
        den = self.denominator()
        dim = self.rep.datum.dim
        out = [CharacterPoly.one(dim)]
        for k in range(1, degree + 1):
            acc = CharacterPoly()
            for j in range(1, min(k, len(den) - 1) + 1):
                acc = acc - den[j] * out[k - j]
            out.append(acc)
        return out


def standard_lfactor(rep: RepTable) -> StandardLFactor:
    return StandardLFactor(rep)


def partition_count(weights: Sequence[Weight], mu: Weight, d: int | None = None) -> int:
    """Number of size-c(mu) multisets drawn from the list whose sum is mu."""
    if any(w.degree != 1 for w in weights):
        raise ValueError("every listed weight must have degree 1")
    if d is not None and d != mu.degree:
        return 0
    if mu.degree < 0:
        return 0
    count = 0
    for combo in combinations_with_replacement(range(len(weights)), mu.degree):
        total = Weight.zero(mu.dim)
        for i in combo:
            total = total + weights[i]
        if total == mu:
            count += 1
    return count


def basic_constant_term(rep: RepTable, mu: Weight) -> int:
    """Multiplicity of mu in Sym^c(mu) of the representation.

    Counted by a knapsack over basis vectors: each vector is used some number
    of times, tracking the running size and the running weight.
    """
    d = mu.degree
    if d < 0:
        return 0
    states: Counter = Counter({(0, Weight.zero(mu.dim).coords2): 1})
    for w in rep.basis():
        nxt: Counter = Counter()
        for (size, coords), ways in states.items():
            cur = coords
            for k in range(0, d - size + 1):
                nxt[(size + k, cur)] += ways
                cur = tuple(a + b for a, b in zip(cur, w.coords2))
        states = nxt
    return states.get((d, mu.coords2), 0)


@dataclass(frozen=True)
class GradedLayers:
    """Layers of a basic function: layer d is (trace of Sym^d, scalar q^(-d s))."""

    layers: Tuple[Tuple[CharacterPoly, CoefRing], ...]

    def __len__(self) -> int:
        return len(self.layers)


@lru_cache(maxsize=64)
def _sym_traces(rep: RepTable, degree: int) -> Tuple[CharacterPoly, ...]:
    return tuple(sym_power_trace(rep, d) for d in range(degree + 1))


def basic_function_layers(rep: RepTable, s, degree: int) -> GradedLayers:
    s2 = Fraction(s) * 2
    if s2.denominator != 1:
        raise ValueError(f"s = {s} is not a half-integer")
    return GradedLayers(tuple(
        (tr, CoefRing.t_power(-d * int(s2))) for d, tr in enumerate(_sym_traces(rep, degree))
    ))


def basic_shift_bookkeeping(layers: GradedLayers, shift) -> GradedLayers:
    """Multiply by |c|^shift: layer d picks up q^(-d * shift)."""
    s2 = Fraction(shift) * 2
    if s2.denominator != 1:
        raise ValueError(f"shift {shift} is not a half-integer")
    return GradedLayers(tuple(
        (tr, scale * CoefRing.t_power(-d * int(s2))) for d, (tr, scale) in enumerate(layers.layers)
    ))


def eta_lambda_pairing(datum: RootDatum, lam: Weight) -> Fraction:
    """<eta_G, lambda> with eta_G the half-sum of positive roots of G."""
    return half_sum_positive(datum).dot(lam)


def basic_function(rep: RepTable, group: RootDatum, lam: Weight, degree: int) -> GradedLayers:
    """The basic function attached to rho, i.e. the layers at s = -<eta_G, lambda>."""
    return basic_function_layers(rep, -eta_lambda_pairing(group, lam), degree)


def weyl_dimension_of(rep: RepTable) -> int:
    return weyl_dimension(rep.datum, rep.highest_weight.with_degree(0))
