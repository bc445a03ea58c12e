"""Exact multivariate Laurent polynomials with integer coefficients.

A :class:`LaurentPoly` is immutable. Internally it stores a sorted tuple of
variable names and a dict mapping exponent tuples (aligned with the
variables) to nonzero Python ints, so coefficients never overflow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "LaurentError",
    "NotDivisible",
    "DivisionByZero",
    "NonInvertibleImage",
    "NotCenterable",
    "Monomial",
    "LaurentPoly",
    "add",
    "mul",
    "div_exact",
    "substitute",
    "term_count",
    "symmetrize",
    "var",
    "const",
    "from_coeffs",
]


class LaurentError(ArithmeticError):
    pass


class NotDivisible(LaurentError):
    pass


class DivisionByZero(LaurentError, ZeroDivisionError):
    pass


class NonInvertibleImage(LaurentError):
    pass


class NotCenterable(LaurentError):
    pass


@dataclass(frozen=True, order=True)
class Monomial:
    """A Laurent monomial, stored as sorted ``(variable, exponent)`` pairs.

    Zero exponents are dropped, so equal monomials compare equal whatever
    variable set they came from.
    """

    exponents: tuple[tuple[str, int], ...] = ()

    @classmethod
    def from_map(cls, exps: Mapping[str, int]) -> "Monomial":
        return cls(tuple(sorted((v, int(e)) for v, e in exps.items() if e)))

    def as_dict(self) -> dict[str, int]:
        return dict(self.exponents)

    def degree(self, name: str) -> int:
        return dict(self.exponents).get(name, 0)


Coercible = Union["LaurentPoly", int]


class LaurentPoly:
    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping[tuple[int, ...], int] | None = None):
        vs = tuple(variables)
        if list(vs) != sorted(set(vs)):
            # reorder exponent tuples to the canonical (sorted) variable order
            order = sorted(set(vs))
            if len(order) != len(vs):
                raise ValueError(f"duplicate variable names: {vs}")
            perm = [vs.index(v) for v in order]
            terms = {tuple(e[i] for i in perm): c for e, c in (terms or {}).items()}
            vs = tuple(order)
        clean: dict[tuple[int, ...], int] = {}
        for e, c in (terms or {}).items():
            if len(e) != len(vs):
                raise ValueError("exponent tuple length does not match variables")
            c = int(c)
            if c:
                clean[tuple(int(x) for x in e)] = c
        self._vars = vs
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vs: tuple[str, ...], terms: dict[tuple[int, ...], int]) -> "LaurentPoly":
        # trusted constructor: vs sorted, terms already canonical
        obj = cls.__new__(cls)
        obj._vars = vs
        obj._terms = terms
        obj._hash = None
        return obj

    # -- accessors ---------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms as ``(exponents, coeff)`` in canonical (ascending lex) order."""
        return sorted(self._terms.items())

    def monomials(self) -> Iterator[tuple[Monomial, int]]:
        for e, c in self.items():
            yield Monomial(tuple((v, x) for v, x in zip(self._vars, e) if x)), c

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, exps: Mapping[str, int] | int = 0) -> int:
        """Coefficient of a monomial; an int is accepted for univariate polys."""
        if isinstance(exps, int):
            if len(self._vars) > 1:
                raise ValueError("integer exponent needs a univariate polynomial")
            if not self._vars:
                return 0 if exps else self._terms.get((), 0)
            return self._terms.get((exps,), 0)
        if any(v not in self._vars for v, e in exps.items() if e):
            return 0
        return self._terms.get(tuple(exps.get(v, 0) for v in self._vars), 0)

    def degree_range(self, name: str) -> tuple[int, int]:
        """``(min, max)`` exponent of ``name`` over the support."""
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        if name not in self._vars:
            return (0, 0)
        i = self._vars.index(name)
        es = [e[i] for e in self._terms]
        return min(es), max(es)

    def univariate_coeffs(self, name: str | None = None) -> dict[int, int]:
        """Map exponent -> coefficient for a polynomial in at most one variable."""
        vs = [v for v in self._vars if any(e[self._vars.index(v)] for e in self._terms)]
        if len(vs) > 1 or (name is not None and vs and vs[0] != name):
            raise ValueError(f"not univariate in {name!r}: {self}")
        if not vs:
            return {0: self._terms[tuple(0 for _ in self._vars)]} if self._terms else {}
        i = self._vars.index(vs[0])
        return {e[i]: c for e, c in self._terms.items()}

    def evaluate(self, values: Mapping[str, int]) -> int:
        """Integer value at the given point; negative powers need values of +/-1."""
        total = 0
        for e, c in self._terms.items():
            term = c
            for v, x in zip(self._vars, e):
                if x >= 0:
                    term *= values[v] ** x
                else:
                    b = values[v]
                    if b not in (1, -1):
                        raise NonInvertibleImage(f"{v}={b} is not a unit in Z")
                    term *= b ** (-x)
            total += term
        return total

    # -- canonical comparison --------------------------------------------

    def _sparse(self) -> frozenset:
        vs = self._vars
        return frozenset(
            (tuple((v, x) for v, x in zip(vs, e) if x), c) for e, c in self._terms.items()
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self._vars == other._vars:
            return self._terms == other._terms
        return self._sparse() == other._sparse()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._sparse())
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def with_variables(self, names: Iterable[str]) -> "LaurentPoly":
        """Re-embed into a superset of variables (sorted)."""
        target = tuple(sorted(set(names) | set(self._vars)))
        if target == self._vars:
            return self
        idx = [self._vars.index(v) if v in self._vars else -1 for v in target]
        terms = {tuple(e[i] if i >= 0 else 0 for i in idx): c for e, c in self._terms.items()}
        return LaurentPoly._raw(target, terms)

    def __add__(self, other: Coercible) -> "LaurentPoly":
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Coercible) -> "LaurentPoly":
        return add(self, -_coerce(other))

    def __rsub__(self, other: Coercible) -> "LaurentPoly":
        return add(_coerce(other), -self)

    def __mul__(self, other: Coercible) -> "LaurentPoly":
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) != 1:
                raise NonInvertibleImage(f"{self} is not a monomial")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise NonInvertibleImage(f"{self} is not a unit")
            return LaurentPoly._raw(self._vars, {tuple(x * n for x in e): c ** (-n)})
        result = const(1)
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    def __floordiv__(self, other: Coercible) -> "LaurentPoly":
        return div_exact(self, _coerce(other))

    # -- rendering ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """Human-readable form, ascending canonical order: ``1 - t + t^2``."""
        if not self._terms:
            return "0"
        out = []
        for k, (e, c) in enumerate(self.items()):
            mono = "*".join(
                v if x == 1 else f"{v}^{x}" for v, x in zip(self._vars, e) if x
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if k == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    def to_json_obj(self) -> dict:
        return {
            "vars": list(self._vars),
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "LaurentPoly":
        vs = list(obj["vars"])
        terms: dict[tuple[int, ...], int] = {}
        for t in obj["terms"]:
            e = tuple(int(x) for x in t["exp"])
            terms[e] = terms.get(e, 0) + int(t["coeff"])
        return cls(vs, terms)

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(text))


def _coerce(x: Coercible) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


def const(c: int) -> LaurentPoly:
    return LaurentPoly._raw((), {(): int(c)} if c else {})


def var(name: str, power: int = 1) -> LaurentPoly:
    return LaurentPoly._raw((name,), {(power,): 1})


def from_coeffs(coeffs: Mapping[int, int] | Iterable[int], name: str = "t", start: int = 0) -> LaurentPoly:
    """Univariate polynomial from ``{exp: coeff}`` or a dense list starting at ``start``."""
    if isinstance(coeffs, Mapping):
        items = coeffs.items()
    else:
        items = ((start + i, c) for i, c in enumerate(coeffs))
    return LaurentPoly._raw((name,), {(e,): c for e, c in items if c})


def _align(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if a._vars == b._vars:
        return a, b
    names = set(a._vars) | set(b._vars)
    return a.with_variables(names), b.with_variables(names)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a, b = _align(a, b)
    terms = dict(a._terms)
    for e, c in b._terms.items():
        s = terms.get(e, 0) + c
        if s:
            terms[e] = s
        else:
            terms.pop(e, None)
    return LaurentPoly._raw(a._vars, terms)


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a, b = _align(a, b)
    if not a._terms or not b._terms:
        return LaurentPoly._raw(a._vars, {})
    terms: dict[tuple[int, ...], int] = {}
    get = terms.get
    if len(a._vars) == 1:
        for (ea,), ca in a._terms.items():
            for (eb,), cb in b._terms.items():
                k = (ea + eb,)
                terms[k] = get(k, 0) + ca * cb
    else:
        for ea, ca in a._terms.items():
            for eb, cb in b._terms.items():
                k = tuple(x + y for x, y in zip(ea, eb))
                terms[k] = get(k, 0) + ca * cb
    return LaurentPoly._raw(a._vars, {e: c for e, c in terms.items() if c})


def _shift(p: LaurentPoly, delta: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    return {tuple(x + d for x, d in zip(e, delta)): c for e, c in p._terms.items()}


def _div_univariate(num: dict[int, int], den: dict[int, int]) -> dict[int, int]:
    # num, den have nonnegative exponents and den has a nonzero constant term
    n_deg = max(num)
    d_deg = max(den)
    if n_deg < d_deg:
        raise NotDivisible("divisor degree exceeds dividend degree")
    rem = [0] * (n_deg + 1)
    for e, c in num.items():
        rem[e] = c
    d0 = den[0]
    tail = [(e, c) for e, c in den.items() if e]
    qlen = n_deg - d_deg + 1
    quot: dict[int, int] = {}
    # division by increasing powers: the constant term of den is the pivot
    for i in range(qlen):
        c = rem[i]
        if not c:
            continue
        qc, r = divmod(c, d0)
        if r:
            raise NotDivisible(f"coefficient {c} not divisible by {d0}")
        quot[i] = qc
        for e, dc in tail:
            rem[i + e] -= qc * dc
    if any(rem[qlen:]):
        raise NotDivisible("nonzero remainder")
    return quot


def _div_lex(num: dict[tuple[int, ...], int], den: dict[tuple[int, ...], int]) -> dict[tuple[int, ...], int]:
    # ordinary polynomials (nonnegative exponents); reduce leading terms in lex order
    rem = dict(num)
    lead_e = max(den)
    lead_c = den[lead_e]
    rest = [(e, c) for e, c in den.items() if e != lead_e]
    quot: dict[tuple[int, ...], int] = {}
    while rem:
        e = max(rem)
        c = rem[e]
        shift = tuple(x - y for x, y in zip(e, lead_e))
        if any(s < 0 for s in shift):
            raise NotDivisible("leading monomial not divisible")
        qc, r = divmod(c, lead_c)
        if r:
            raise NotDivisible(f"coefficient {c} not divisible by {lead_c}")
        quot[shift] = qc
        del rem[e]
        for de, dc in rest:
            k = tuple(s + x for s, x in zip(shift, de))
            v = rem.get(k, 0) - qc * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return quot


def div_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``q`` with ``q * den == num``.

    Both operands are shifted by monomials to ordinary polynomials with the
    divisor free of monomial factors, divided there, and shifted back.
    Raises :class:`NotDivisible` if the remainder is nonzero.
    """
    if not den._terms:
        raise DivisionByZero("division by the zero polynomial")
    num, den = _align(num, den)
    vs = num._vars
    if not num._terms:
        return LaurentPoly._raw(vs, {})
    nv = len(vs)
    n_min = tuple(min(e[i] for e in num._terms) for i in range(nv))
    d_min = tuple(min(e[i] for e in den._terms) for i in range(nv))
    n_sh = _shift(num, tuple(-x for x in n_min))
    d_sh = _shift(den, tuple(-x for x in d_min))
    if nv == 1:
        q = _div_univariate({e[0]: c for e, c in n_sh.items()}, {e[0]: c for e, c in d_sh.items()})
        q = {(e,): c for e, c in q.items()}
    else:
        q = _div_lex(n_sh, d_sh)
    back = tuple(a - b for a, b in zip(n_min, d_min))
    return LaurentPoly._raw(vs, {tuple(x + d for x, d in zip(e, back)): c for e, c in q.items()})


def substitute(p: LaurentPoly, name: str, image: Coercible) -> LaurentPoly:
    """Replace variable ``name`` by ``image`` everywhere in ``p``.

    Negative powers of ``name`` require ``image`` to be a unit monomial
    (``+/-`` a Laurent monomial); otherwise :class:`NonInvertibleImage`.
    """
    image = _coerce(image)
    if name not in p._vars:
        return p
    i = p._vars.index(name)
    exps = {e[i] for e in p._terms}
    if exps and min(exps) < 0:
        if len(image._terms) != 1 or next(iter(image._terms.values())) not in (1, -1):
            raise NonInvertibleImage(f"cannot invert {image} for negative powers of {name}")
    rest_vars = p._vars[:i] + p._vars[i + 1:]
    if len(image._terms) == 1:
        # monomial map: substitute exponentwise without expanding powers
        (ie, ic), = image._terms.items()
        tv = tuple(sorted(set(rest_vars) | set(image._vars)))
        pos_rest = [tv.index(v) for v in rest_vars]
        pos_img = [tv.index(v) for v in image._vars]
        terms: dict[tuple[int, ...], int] = {}
        for e, c in p._terms.items():
            k = e[i]
            out = [0] * len(tv)
            for j, v in zip(pos_rest, e[:i] + e[i + 1:]):
                out[j] += v
            for j, v in zip(pos_img, ie):
                out[j] += v * k
            key = tuple(out)
            terms[key] = terms.get(key, 0) + c * ic ** abs(k)
        return LaurentPoly._raw(tv, {e: c for e, c in terms.items() if c})
    # general image: group by power of name and expand
    by_power: dict[int, dict[tuple[int, ...], int]] = {}
    for e, c in p._terms.items():
        by_power.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
    result = LaurentPoly._raw(tuple(sorted(set(rest_vars) | set(image._vars))), {})
    for k in sorted(by_power):
        coeff = LaurentPoly._raw(rest_vars, by_power[k])
        result = add(result, mul(coeff, image ** k))
    return result


def term_count(p: LaurentPoly) -> int:
    return len(p._terms)


def symmetrize(p: LaurentPoly, strict: bool = False) -> LaurentPoly:
    """Unit-normalized representative with support centered at 0 in each variable.

    A variable whose exponent span is odd has no integer center; it is then
    replaced by its square before centering (``strict=True`` raises
    :class:`NotCenterable` instead). The sign is chosen so the value at all
    variables equal to 1 is positive; if that value is 0, the first term in
    canonical order gets a positive coefficient.
    """
    if not p._terms:
        return p
    vs = p._vars
    nv = len(vs)
    lo = [min(e[i] for e in p._terms) for i in range(nv)]
    hi = [max(e[i] for e in p._terms) for i in range(nv)]
    scale = []
    for i in range(nv):
        if (hi[i] - lo[i]) % 2:
            if strict:
                raise NotCenterable(f"odd exponent span in {vs[i]}")
            scale.append(2)
        else:
            scale.append(1)
    terms = {}
    for e, c in p._terms.items():
        terms[tuple(s * x - (s * (a + b)) // 2 for x, s, a, b in zip(e, scale, lo, hi))] = c
    total = sum(terms.values())
    if total < 0 or (total == 0 and terms[min(terms)] < 0):
        terms = {e: -c for e, c in terms.items()}
    return LaurentPoly._raw(vs, terms)
