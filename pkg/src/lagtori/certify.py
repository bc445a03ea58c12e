"""Term-count certificates bounding the number of Seiberg-Witten basic
classes of X_{p,q} from below.

The chain is: #basic classes = #terms of the three-variable Alexander
polynomial >= #terms of its x = 1 specialization >= #terms of P_{p,q}
>= p - q + 1. The last two links are checked exactly here.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .family import LinkFamilyParams, p_poly
from .laurent import LaurentPoly, substitute, term_count, var

__all__ = [
    "CertificateError",
    "SurvivorCancelled",
    "ChainViolation",
    "Certificate",
    "sw_map",
    "survivor_exponents",
    "verify_survivors",
    "cancellation_check",
    "first_cancellation",
    "certificate",
    "divergence_witness",
    "certificate_grid",
    "grid_params",
    "CSV_COLUMNS",
    "certificates_to_csv",
]


class CertificateError(ArithmeticError):
    pass


class SurvivorCancelled(CertificateError):
    def __init__(self, exponent: int, params: LinkFamilyParams | None = None):
        self.exponent = exponent
        self.params = params
        super().__init__(f"survivor term t^{exponent} has coefficient 0 for {params}")


class ChainViolation(CertificateError):
    pass


def sw_map(delta_sym: LaurentPoly) -> LaurentPoly:
    """Replace every variable by its square."""
    out = delta_sym
    for v in delta_sym.variables:
        out = substitute(out, v, var(v, 2))
    return out


def survivor_exponents(params: LinkFamilyParams) -> list[int]:
    p, q = params.p, params.q
    base = (q - 1) * (p + 1)
    return [base + n * p for n in range(p - q + 1)]


def verify_survivors(params: LinkFamilyParams) -> list[tuple[int, int]]:
    P = p_poly(params)
    out = []
    for e in survivor_exponents(params):
        c = P.coeff(e)
        if c == 0:
            raise SurvivorCancelled(e, params)
        out.append((e, c))
    return out


def cancellation_check(params: LinkFamilyParams, n: int) -> Optional[tuple[int, int]]:
    """Smallest (k, l), k >= 0 and 0 <= l <= p-1, with
    (q-1)(p+1) + n p = k p + l (p+1) + q, found by exhaustive search."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p, q = params.p, params.q
    lhs = (q - 1) * (p + 1) + n * p
    kmax = -(-lhs // p)
    found = []
    for l in range(p):
        k, r = divmod(lhs - q - l * (p + 1), p)
        if r == 0 and 0 <= k <= kmax:
            found.append((k, l))
    return min(found) if found else None


def first_cancellation(params: LinkFamilyParams, n_max: int | None = None) -> Optional[tuple[int, int, int]]:
    """First n with a solution, as (n, k, l); searches n <= n_max (default 2(p-q+1))."""
    if n_max is None:
        n_max = 2 * (params.p - params.q + 1)
    for n in range(n_max + 1):
        sol = cancellation_check(params, n)
        if sol is not None:
            return (n, *sol)
    return None


@dataclass(frozen=True)
class Certificate:
    params: LinkFamilyParams
    exact_terms_P: int
    bound: int
    survivors: tuple[tuple[int, int], ...]
    cancellation_witness: Optional[tuple[int, int, int]]
    verified: bool
    failures: tuple[str, ...] = field(default=(), compare=False)

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def q(self) -> int:
        return self.params.q

    def to_json_obj(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "terms_P": self.exact_terms_P,
            "bound": self.bound,
            "survivors": [[e, c] for e, c in self.survivors],
            "first_cancel_n": None if self.cancellation_witness is None else self.cancellation_witness[0],
            "verified": self.verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    def csv_row(self) -> list:
        return [self.p, self.q, self.exact_terms_P, self.bound, "true" if self.verified else "false"]


CSV_COLUMNS = ["p", "q", "terms_P", "bound", "verified"]


def certificates_to_csv(certs: Iterable[Certificate]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for c in certs:
        w.writerow(c.csv_row())
    return buf.getvalue()


def certificate(params: LinkFamilyParams, *, strict: bool = True) -> Certificate:
    """Assemble and check the lower-bound chain for one (p, q).

    With ``strict`` (the default) a falsified link raises
    :class:`SurvivorCancelled` or :class:`ChainViolation`; otherwise the
    certificate comes back with ``verified=False`` and the reasons listed.
    """
    p, q = params.p, params.q
    P = p_poly(params)
    terms = term_count(P)
    bound = p - q + 1
    failures: list[str] = []

    if terms < bound:
        if strict:
            raise ChainViolation(f"P_{{{p},{q}}} has {terms} terms < bound {bound}")
        failures.append(f"term count {terms} < bound {bound}")

    survivors = []
    for e in survivor_exponents(params):
        c = P.coeff(e)
        if c == 0 and strict:
            raise SurvivorCancelled(e, params)
        if c != 1:
            failures.append(f"survivor t^{e} has coefficient {c}")
        survivors.append((e, c))

    witness = first_cancellation(params)
    if witness != (bound, 0, p - 1):
        failures.append(f"first cancellation {witness} != {(bound, 0, p - 1)}")

    return Certificate(
        params=params,
        exact_terms_P=terms,
        bound=bound,
        survivors=tuple(survivors),
        cancellation_witness=witness,
        verified=not failures,
        failures=tuple(failures),
    )


def divergence_witness(q: int, N: int) -> LinkFamilyParams:
    """Smallest p whose certified bound p - q + 1 reaches N."""
    if q < 1 or N < 1:
        raise ValueError(f"need q >= 1 and N >= 1, got q={q}, N={N}")
    return LinkFamilyParams(N + q - 1, q)


def certificate_grid(pmax: int, qmax: int | None = None, *, strict: bool = False) -> Iterator[Certificate]:
    """Certificates for 1 <= q <= min(p, qmax), q <= p <= pmax, in (p, q) order."""
    for params in grid_params(pmax, qmax):
        yield certificate(params, strict=strict)


def grid_params(pmax: int, qmax: int | None = None) -> list[LinkFamilyParams]:
    qmax = pmax if qmax is None else qmax
    return [LinkFamilyParams(p, q) for p in range(1, pmax + 1) for q in range(1, min(p, qmax) + 1)]
