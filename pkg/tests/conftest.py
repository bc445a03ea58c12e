import pytest
from hypothesis import strategies as st

from lagtori.laurent import LaurentPoly

VARS = ("t", "x", "y")

_acceptance_lines: list[str] = []


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""

    def _report(label: str, ok: bool, detail: str = "") -> None:
        _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f"  ({detail})" if detail else ""))

    return _report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def series_quotient(num: dict[int, int], den_factors: list[int], top: int) -> dict[int, int]:
    """num / prod(1 - t^a) as a power series truncated above ``top``.

    Independent of div_exact: each 1/(1 - t^a) is expanded as the
    geometric series 1 + t^a + t^2a + ...
    """
    coeffs = [0] * (top + 1)
    for e, c in num.items():
        if e <= top:
            coeffs[e] += c
    for a in den_factors:
        for i in range(a, top + 1):
            coeffs[i] += coeffs[i - a]
    return {i: c for i, c in enumerate(coeffs) if c}


def expand(factors: list[tuple[int, int]]) -> dict[int, int]:
    """prod(1 + c t^e) for (c, e) in factors, as {exp: coeff}."""
    out = {0: 1}
    for c, e in factors:
        nxt = dict(out)
        for k, v in out.items():
            nxt[k + e] = nxt.get(k + e, 0) + c * v
        out = {k: v for k, v in nxt.items() if v}
    return out


@st.composite
def laurent_polys(draw, max_terms=5, vars=VARS, lo=-3, hi=3, coeff=20):
    names = draw(st.lists(st.sampled_from(vars), min_size=0, max_size=len(vars), unique=True))
    names = tuple(sorted(names))
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(lo, hi)) for _ in names)
        terms[e] = draw(st.integers(-coeff, coeff))
    return LaurentPoly(names, terms)
