"""Exact Alexander-polynomial computations and term-count certificates for
the family of Lagrangian tori R_{p,q} in E(2)_K."""

from .laurent import LaurentPoly, div_exact, substitute, symmetrize, term_count, var
from .family import LinkFamilyParams, alexander_torus_knot, p_poly
from .certify import Certificate, certificate

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "div_exact",
    "substitute",
    "symmetrize",
    "term_count",
    "var",
    "LinkFamilyParams",
    "alexander_torus_knot",
    "p_poly",
    "Certificate",
    "certificate",
]
