"""Invariants of the link family L_{p,q} = K u M u gamma_{p,q}.

Everything here is in 0-based (unsymmetrized) normal form: univariate
results in ``t`` have lowest exponent 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .laurent import LaurentPoly, NotDivisible, div_exact, mul, var

__all__ = [
    "FamilyError",
    "NotCoprime",
    "LinkFamilyParams",
    "LinkingData",
    "HomologyClass",
    "linking_matrix",
    "homology_class",
    "alexander_torus_knot",
    "p_poly",
    "torres_specialize",
    "splice_q1",
    "specialization_x1",
    "t_coefficients",
]

T = var("t")
Y = var("y")


class FamilyError(ValueError):
    pass


class NotCoprime(FamilyError):
    pass


@dataclass(frozen=True, order=True)
class LinkFamilyParams:
    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise FamilyError("p and q must be integers")
        if not 1 <= self.q <= self.p:
            raise FamilyError(f"need 1 <= q <= p, got p={self.p}, q={self.q}")


@dataclass(frozen=True)
class LinkingData:
    """Pairwise linking numbers of (K, M, gamma); the diagonal is undefined."""

    lk_KM: int
    lk_Kg: int
    lk_Mg: int
    names: tuple[str, str, str] = ("K", "M", "gamma")

    @property
    def off_diagonal(self) -> tuple[int, int, int]:
        return (self.lk_KM, self.lk_Kg, self.lk_Mg)

    def matrix(self) -> list[list[int | None]]:
        a, b, c = self.off_diagonal
        return [[None, a, b], [a, None, c], [b, c, None]]

    def lk(self, a: str, b: str) -> int:
        i, j = self.names.index(a), self.names.index(b)
        if i == j:
            raise ValueError("self-linking is not defined")
        entry = self.matrix()[i][j]
        assert entry is not None
        return entry


@dataclass(frozen=True)
class HomologyClass:
    """Class of a curve as ``a [mu(K)] + b [mu(M)]`` in H_1 of the exterior of K u M."""

    a: int
    b: int


def linking_matrix(params: LinkFamilyParams) -> LinkingData:
    # gamma_{p,q} pierces the spanning disk of M with q strands and has
    # zero total linking with K; M is a meridian of K. None of this sees p.
    return LinkingData(lk_KM=1, lk_Kg=0, lk_Mg=params.q)


def homology_class(params: LinkFamilyParams) -> HomologyClass:
    lk = linking_matrix(params)
    return HomologyClass(a=lk.lk("gamma", "K"), b=lk.lk("gamma", "M"))


@lru_cache(maxsize=512)
def alexander_torus_knot(a: int, b: int) -> LaurentPoly:
    """(1 - t)(1 - t^(ab)) / ((1 - t^a)(1 - t^b)), expanded exactly."""
    if a < 1 or b < 1:
        raise FamilyError(f"torus knot parameters must be positive, got ({a}, {b})")
    if math.gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) = {math.gcd(a, b)}: T({a},{b}) is not a knot")
    num = mul(1 - T, 1 - T ** (a * b))
    den = mul(1 - T ** a, 1 - T ** b)
    return div_exact(num, den)


@lru_cache(maxsize=4096)
def p_poly(params: LinkFamilyParams) -> LaurentPoly:
    """(1 - t^q)(1 - t^(p(p+1))) / ((1 - t^p)(1 - t^(p+1))), expanded exactly."""
    p, q = params.p, params.q
    num = mul(1 - T ** q, 1 - T ** (p * (p + 1)))
    den = mul(1 - T ** p, 1 - T ** (p + 1))
    try:
        return div_exact(num, den)
    except NotDivisible as exc:
        raise ArithmeticError(f"P_{{{p},{q}}} quotient is not exact") from exc


def torres_specialize(params: LinkFamilyParams) -> LaurentPoly:
    """(t^q - 1)/(t - 1) times the Alexander polynomial of T(p, p+1)."""
    geometric = div_exact(T ** params.q - 1, T - 1)
    return mul(geometric, alexander_torus_knot(params.p, params.p + 1))


def splice_q1(p: int) -> LaurentPoly:
    """Two-variable Alexander polynomial of gamma_{p,1} u M, in (y, t).

    The splice with the three-component necklace, whose polynomial is u - 1,
    leaves only the torus-knot factor, so there is no y dependence.
    """
    if p < 2:
        raise FamilyError(f"p >= 2 required, got {p}")
    return alexander_torus_knot(p, p + 1).with_variables(["y", "t"])


def specialization_x1(params: LinkFamilyParams, two_var: LaurentPoly) -> LaurentPoly:
    """Value of the three-variable polynomial at x = 1, given Delta_{gamma u M}(y, t).

    The Torres factor is y^lk(M,K) t^lk(gamma,K) - 1.
    """
    lk = linking_matrix(params)
    factor = mul(var("y", lk.lk_KM), var("t", lk.lk_Kg)) - 1
    return mul(factor, two_var).with_variables(["y", "t"])


def t_coefficients(poly: LaurentPoly) -> dict[int, LaurentPoly]:
    """Split a (y, t) polynomial as sum_k a_k(y) t^k; returns {k: a_k}."""
    poly = poly.with_variables(["y", "t"])
    ti = poly.variables.index("t")
    yi = poly.variables.index("y")
    out: dict[int, dict[tuple[int], int]] = {}
    for e, c in poly.terms.items():
        out.setdefault(e[ti], {})[(e[yi],)] = c
    return {k: LaurentPoly(("y",), v) for k, v in sorted(out.items())}
