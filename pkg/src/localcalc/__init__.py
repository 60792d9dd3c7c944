"""Exact local computations for unramified L-factors, the doubling method and
Braverman-Kazhdan normalizations."""

from .qfield import AffineExponent, CoefRing, PoleError, RatFun, gamma_local, tate_collapse, zeta_local

__all__ = ["AffineExponent", "CoefRing", "PoleError", "RatFun", "gamma_local", "tate_collapse", "zeta_local"]
__version__ = "0.1.0"
