"""Classical root data in coordinates, Weyl group helpers and Smith normal form."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

from .qfield import AffineExponent


@dataclass(frozen=True, order=True)
class Weight:
    """A vector in the x-basis, coordinates stored doubled, plus a grading degree."""

    coords2: Tuple[int, ...]
    degree: int = 0

    @classmethod
    def of(cls, coords: Iterable, degree: int = 0) -> "Weight":
        out = []
        for c in coords:
            c2 = Fraction(c) * 2
            if c2.denominator != 1:
                raise ValueError(f"coordinate {c} is not a half-integer")
            out.append(int(c2))
        return cls(tuple(out), degree)

    @classmethod
    def basis(cls, dim: int, i: int, scale=1) -> "Weight":
        """scale * x_(i+1) in a space of the given dimension (0-based i)."""
        v = [0] * dim
        v[i] = scale
        return cls.of(v)

    @classmethod
    def zero(cls, dim: int, degree: int = 0) -> "Weight":
        return cls((0,) * dim, degree)

    @property
    def dim(self) -> int:
        return len(self.coords2)

    @property
    def coords(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.coords2)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords2, other.coords2)),
                      self.degree + other.degree)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords2), -self.degree)

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def scale(self, k) -> "Weight":
        k = Fraction(k)
        out = [k * c for c in self.coords2]
        if any(c.denominator != 1 for c in out):
            raise ValueError("scaled weight leaves the half-integer lattice")
        deg = k * self.degree
        if deg.denominator != 1:
            raise ValueError("scaled weight has a fractional degree")
        return Weight(tuple(int(c) for c in out), int(deg))

    def dot(self, other: "Weight") -> Fraction:
        """Standard Euclidean form on the x-coordinates."""
        return Fraction(sum(a * b for a, b in zip(self.coords2, other.coords2)), 4)

    def with_degree(self, degree: int) -> "Weight":
        return Weight(self.coords2, degree)

    def is_zero(self) -> bool:
        return not any(self.coords2)

    def label(self) -> str:
        parts = []
        for i, c in enumerate(self.coords, 1):
            if c == 0:
                continue
            coef = {1: "", -1: "-"}.get(c, str(c))
            parts.append(f"{coef}x{i}")
        s = "+".join(parts).replace("+-", "-") or "0"
        return s

    def to_json(self) -> dict:
        return {"coords": [str(c) for c in self.coords], "degree": self.degree}

    def __str__(self) -> str:
        return self.label()


SUPPORTED = ("A", "B", "C", "D")


@dataclass(frozen=True)
class RootDatum:
    cartan_type: str
    rank: int
    simple_roots: Tuple[Weight, ...]
    positive_roots: Tuple[Weight, ...]

    @property
    def dim(self) -> int:
        return self.simple_roots[0].dim

    @cached_property
    def roots(self) -> Tuple[Weight, ...]:
        return tuple(sorted(self.positive_roots + tuple(-a for a in self.positive_roots)))

    @staticmethod
    def coroot(alpha: Weight) -> Weight:
        # alpha^vee = 2 alpha / (alpha, alpha); gives (2x_i)^vee = x_i in type C
        return alpha.scale(Fraction(2) / alpha.dot(alpha))

    @cached_property
    def coroots(self) -> Dict[Weight, Weight]:
        return {a: self.coroot(a) for a in self.roots}

    def pairing(self, lam: Weight, alpha: Weight) -> Fraction:
        """<lam, alpha^vee>."""
        return lam.dot(self.coroot(alpha))

    def reflect(self, alpha: Weight, lam: Weight) -> Weight:
        k = self.pairing(lam, alpha)
        return Weight(tuple(int(l - k * a) for l, a in zip(lam.coords2, alpha.coords2)),
                      lam.degree)

    @cached_property
    def cartan_matrix(self) -> List[List[int]]:
        """C[i][j] = <alpha_i, alpha_j^vee>."""
        return [[int(self.pairing(a, b)) for b in self.simple_roots] for a in self.simple_roots]

    def is_dominant(self, lam: Weight) -> bool:
        for a in self.simple_roots:
            p = self.pairing(lam, a)
            if p < 0 or p.denominator != 1:
                return False
        return True

    def is_integral(self, lam: Weight) -> bool:
        return all(self.pairing(lam, a).denominator == 1 for a in self.simple_roots)

    def dominant_conjugate(self, lam: Weight) -> Weight:
        changed = True
        while changed:
            changed = False
            for a in self.simple_roots:
                if self.pairing(lam, a) < 0:
                    lam = self.reflect(a, lam)
                    changed = True
        return lam

    def weyl_orbit(self, lam: Weight) -> List[Weight]:
        seen = {lam}
        frontier = [lam]
        while frontier:
            nxt = []
            for mu in frontier:
                for a in self.simple_roots:
                    nu = self.reflect(a, mu)
                    if nu not in seen:
                        seen.add(nu)
                        nxt.append(nu)
            frontier = nxt
        return sorted(seen)

    def simple_root_coords(self, v: Weight) -> List[Fraction] | None:
        """Coefficients of v in the simple roots, or None if v is not in their span."""
        rows = [list(map(Fraction, a.coords2)) for a in self.simple_roots]
        target = list(map(Fraction, v.coords2))
        r, d = len(rows), len(target)
        # solve sum_k c_k rows[k] = target via the transposed augmented system
        m = [[rows[k][i] for k in range(r)] + [target[i]] for i in range(d)]
        piv_cols = []
        row = 0
        for col in range(r):
            p = next((i for i in range(row, d) if m[i][col] != 0), None)
            if p is None:
                continue
            m[row], m[p] = m[p], m[row]
            pv = m[row][col]
            m[row] = [x / pv for x in m[row]]
            for i in range(d):
                if i != row and m[i][col] != 0:
                    f = m[i][col]
                    m[i] = [x - f * y for x, y in zip(m[i], m[row])]
            piv_cols.append(col)
            row += 1
        if any(m[i][r] != 0 for i in range(row, d)):
            return None
        sol = [Fraction(0)] * r
        for i, col in enumerate(piv_cols):
            sol[col] = m[i][r]
        return sol

    def to_json(self) -> dict:
        return {
            "type": self.cartan_type,
            "rank": self.rank,
            "roots": [list(map(str, a.coords)) for a in self.roots],
            "simple_roots": [list(map(str, a.coords)) for a in self.simple_roots],
        }


def build_root_datum(cartan_type: str, rank: int) -> RootDatum:
    """Root system of type A, B, C or D in Bourbaki coordinates.

    Type A of rank r lives in r + 1 coordinates (the GL_{r+1} torus).
    """
    t = cartan_type.upper()
    if t not in SUPPORTED:
        raise ValueError(f"unsupported Cartan type {cartan_type!r}")
    if rank < 1 or (t == "D" and rank < 2):
        raise ValueError(f"unsupported rank {rank} for type {t}")
    dim = rank + 1 if t == "A" else rank

    def x(i: int, k=1) -> Weight:
        return Weight.basis(dim, i, k)

    pos: List[Weight] = []
    for i in range(dim):
        for j in range(i + 1, dim):
            pos.append(x(i) - x(j))
            if t != "A":
                pos.append(x(i) + x(j))
    if t == "B":
        pos += [x(i) for i in range(dim)]
    elif t == "C":
        pos += [x(i, 2) for i in range(dim)]

    simple = [x(i) - x(i + 1) for i in range(dim - 1)]
    if t == "B":
        simple.append(x(dim - 1))
    elif t == "C":
        simple.append(x(dim - 1, 2))
    elif t == "D":
        simple.append(x(dim - 2) + x(dim - 1))
    return RootDatum(t, rank, tuple(simple), tuple(sorted(pos)))


def half_sum_positive(datum: RootDatum) -> Weight:
    total = Weight.zero(datum.dim)
    for a in datum.positive_roots:
        total = total + a
    return total.scale(Fraction(1, 2))


def weyl_dimension(datum: RootDatum, lam: Weight) -> int:
    rho = half_sum_positive(datum)
    num = Fraction(1)
    for a in datum.positive_roots:
        num *= datum.pairing(lam + rho, a) / datum.pairing(rho, a)
    if num.denominator != 1:
        raise ArithmeticError("Weyl dimension formula returned a non-integer")
    return int(num)


def principal_grading(n: int) -> List[Fraction]:
    """Half-eigenvalues s_j = (n+1)/2 - j of the principal h of gl_n."""
    return [Fraction(n + 1, 2) - j for j in range(1, n + 1)]


def chi_s_pairing(n: int, coroot: Weight) -> AffineExponent:
    """(chi_s, coroot) for chi_s = sum_i (s - s_i) x_i on the GL_n torus."""
    if coroot.dim != n:
        raise ValueError(f"coroot has {coroot.dim} coordinates, expected {n}")
    grading = principal_grading(n)
    a = sum(coroot.coords, Fraction(0))
    b = -sum((c * g for c, g in zip(coroot.coords, grading)), Fraction(0))
    if a.denominator != 1:
        raise ValueError("coroot has a non-integral coefficient sum")
    return AffineExponent.of(int(a), b)


# ---------------------------------------------------------------------------
# integer lattices


@dataclass(frozen=True)
class LatticeMap:
    matrix: Tuple[Tuple[int, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "LatticeMap":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.matrix), (len(self.matrix[0]) if self.matrix else 0)

    def apply(self, v: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.matrix)


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def smith_normal_form(m: LatticeMap) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """Return (U, D, V) with U * M * V = D, U and V unimodular, d_i | d_(i+1)."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_decomp

    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return ([[int(i == j) for j in range(rows)] for i in range(rows)],
                [list(r) for r in m.matrix],
                [[int(i == j) for j in range(cols)] for i in range(cols)])
    D, U, V = smith_normal_decomp(Matrix(m.matrix), domain=ZZ)
    U = [[int(x) for x in U.row(i)] for i in range(U.rows)]
    D = [[int(x) for x in D.row(i)] for i in range(D.rows)]
    V = [[int(x) for x in V.row(i)] for i in range(V.rows)]
    # sympy may leave negative diagonal entries; absorb signs into U
    for i in range(min(rows, cols)):
        if D[i][i] < 0:
            D[i] = [-x for x in D[i]]
            U[i] = [-x for x in U[i]]
    assert _matmul(_matmul(U, [list(r) for r in m.matrix]), V) == D
    return U, D, V


def invariant_factors(m: LatticeMap) -> List[int]:
    """Nonzero diagonal of the Smith form, i.e. the torsion of coker plus free rank as 0s."""
    _, D, _ = smith_normal_form(m)
    rows, cols = m.shape
    return [D[i][i] for i in range(min(rows, cols))]
