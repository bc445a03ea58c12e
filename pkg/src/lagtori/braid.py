"""Braid words, the reduced Burau representation, and Alexander polynomials
of braid closures.

Generator convention: letter ``i`` is the positive crossing sigma_i of
strands i and i+1 (1-based); ``-i`` is its inverse. The reduced Burau image
of sigma_i on n strands is the identity except for the block on rows and
columns i-1, i, i+1 (0-based i-2..i)::

    [[1,  t, 0],
     [0, -t, 0],
     [0,  1, 1]]

truncated at the edges, so on two strands sigma_1 maps to ``[-t]``.
Mirror conventions only swap t and 1/t, which symmetrization absorbs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .laurent import LaurentPoly, NotDivisible, const, div_exact, mul, symmetrize, var

__all__ = [
    "BraidError",
    "StrandMismatch",
    "NotAKnot",
    "BraidWord",
    "compose",
    "free_reduce",
    "closure_permutation",
    "closure_cycles",
    "burau_reduced",
    "burau_generator",
    "determinant",
    "alexander_of_knot_closure",
    "torus_braid",
    "halftwist",
    "gamma_braid",
    "parse_braid",
]

Matrix = list[list[LaurentPoly]]


class BraidError(ValueError):
    pass


class StrandMismatch(BraidError):
    pass


class NotAKnot(BraidError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise BraidError(f"need at least 2 strands, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise BraidError(f"letter {x} out of range for {self.strands} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def to_text(self) -> str:
        return f"strands={self.strands}; " + ",".join(str(x) for x in self.letters)

    def __str__(self) -> str:
        return self.to_text()


def parse_braid(text: str) -> BraidWord:
    """Parse ``"strands=3; 1,2,-1"``. Without a header the strand count is
    one more than the largest generator index."""
    text = text.strip()
    m = re.fullmatch(r"(?:strands\s*=\s*(\d+)\s*;)?\s*([-+\d,\s]*)", text)
    if m is None:
        raise BraidError(f"malformed braid word: {text!r}")
    body = m.group(2).strip()
    try:
        letters = tuple(int(x) for x in body.split(",") if x.strip()) if body else ()
    except ValueError:
        raise BraidError(f"malformed braid letters: {body!r}") from None
    if m.group(1) is not None:
        n = int(m.group(1))
    else:
        n = max((abs(x) for x in letters), default=1) + 1
    return BraidWord(n, letters)


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.strands != b.strands:
        raise StrandMismatch(f"{a.strands} != {b.strands} strands")
    return BraidWord(a.strands, a.letters + b.letters)


def free_reduce(w: BraidWord) -> BraidWord:
    stack: list[int] = []
    for x in w.letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return BraidWord(w.strands, tuple(stack))


def closure_permutation(w: BraidWord) -> tuple[int, ...]:
    """Permutation of positions 0..n-1: a strand entering at ``i`` exits at ``perm[i]``."""
    pos = list(range(w.strands))  # pos[current position] = starting strand
    for x in w.letters:
        i = abs(x) - 1
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    perm = [0] * w.strands
    for end, start in enumerate(pos):
        perm[start] = end
    return tuple(perm)


def closure_cycles(w: BraidWord) -> list[tuple[int, ...]]:
    """Cycles of the closure permutation; one per link component."""
    perm = closure_permutation(w)
    seen = [False] * len(perm)
    cycles = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        cyc = []
        j = s
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        cycles.append(tuple(cyc))
    return cycles


def _identity(m: int) -> Matrix:
    one, zero = const(1), const(0)
    return [[one if r == c else zero for c in range(m)] for r in range(m)]


def _generator_block(i: int, n: int, inverse: bool) -> dict[tuple[int, int], LaurentPoly]:
    # nonidentity entries of the (n-1)x(n-1) image of sigma_i^(+/-1); 0-based rows/cols
    t = var("t")
    ti = var("t", -1)
    k = i - 1
    m = n - 1
    entries: dict[tuple[int, int], LaurentPoly] = {}
    entries[(k, k)] = -ti if inverse else -t
    if k - 1 >= 0:
        entries[(k - 1, k)] = const(1) if inverse else t
    if k + 1 < m:
        entries[(k + 1, k)] = ti if inverse else const(1)
    return entries


def burau_generator(letter: int, n: int) -> Matrix:
    """Reduced Burau image of a single letter on ``n`` strands."""
    M = _identity(n - 1)
    for (r, c), v in _generator_block(abs(letter), n, letter < 0).items():
        M[r][c] = v
    return M


def burau_reduced(w: BraidWord) -> Matrix:
    """Product of the letter images, left to right."""
    n = w.strands
    M = _identity(n - 1)
    blocks = {}
    for x in w.letters:
        if x not in blocks:
            blocks[x] = _generator_block(abs(x), n, x < 0)
        # only column |x|-1 of the generator differs from the identity
        k = abs(x) - 1
        col = [sum((mul(M[r][j], v) for (j, _), v in blocks[x].items()), const(0)) for r in range(n - 1)]
        for r in range(n - 1):
            M[r][k] = col[r]
    return M


def matmul(A: Matrix, B: Matrix) -> Matrix:
    m, inner, ncols = len(A), len(B), len(B[0]) if B else 0
    return [
        [sum((mul(A[r][j], B[j][c]) for j in range(inner)), const(0)) for c in range(ncols)]
        for r in range(m)
    ]


def determinant(M: Matrix) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination.

    Rows are first shifted by powers of each variable to ordinary
    polynomials so every exact division stays inside the polynomial ring.
    """
    n = len(M)
    if n == 0:
        return const(1)
    names = sorted({v for row in M for e in row for v in e.variables})
    A = [list(row) for row in M]
    shift = {v: 0 for v in names}
    for r in range(n):
        for v in names:
            lows = [e.degree_range(v)[0] for e in A[r] if not e.is_zero()]
            low = min(lows) if lows else 0
            if low < 0:
                A[r] = [mul(e, var(v, -low)) for e in A[r]]
                shift[v] += -low
    sign = 1
    prev = const(1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for r in range(k + 1, n):
                if not A[r][k].is_zero():
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return const(0)
        piv = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = div_exact(mul(piv, A[i][j]) - mul(A[i][k], A[k][j]), prev)
            A[i][k] = const(0)
        prev = piv
    det = A[n - 1][n - 1] if sign > 0 else -A[n - 1][n - 1]
    for v, s in shift.items():
        if s:
            det = mul(det, var(v, -s))
    return det


def alexander_of_knot_closure(w: BraidWord) -> LaurentPoly:
    """Symmetrized Alexander polynomial of the closure of ``w``.

    Uses det(B - I) = (1 + t + ... + t^(n-1)) * Delta(t) up to units, for B the
    reduced Burau image of ``w`` on n strands.
    """
    if len(closure_cycles(w)) != 1:
        raise NotAKnot(f"closure of {w} has {len(closure_cycles(w))} components")
    n = w.strands
    t = var("t")
    B = burau_reduced(w)
    for r in range(n - 1):
        B[r][r] = B[r][r] - 1
    det = determinant(B)
    try:
        delta = div_exact(mul(det, 1 - t), 1 - t ** n)
    except NotDivisible as exc:
        raise ArithmeticError(f"closure determinant of {w} not divisible by (1-t^n)/(1-t)") from exc
    return symmetrize(delta.with_variables(["t"]))


def torus_braid(a: int, b: int) -> BraidWord:
    """(sigma_1 ... sigma_{a-1})^b on ``a`` strands; its closure is T(a, b)."""
    if a < 2 or b < 1:
        raise BraidError(f"torus_braid needs a >= 2 and b >= 1, got ({a}, {b})")
    return BraidWord(a, tuple(range(1, a)) * b)


def halftwist(n: int, strands: int | None = None) -> BraidWord:
    """Positive half twist on the first ``n`` strands, n(n-1)/2 letters.

    Strand j (counted from the left) crosses every strand to its right.
    """
    letters: list[int] = []
    for top in range(n - 1, 0, -1):
        letters.extend(range(1, top + 1))
    return BraidWord(strands if strands is not None else max(n, 2), tuple(letters))


def gamma_braid(p: int) -> BraidWord:
    """Braid on p+1 strands whose closure is the curve of the p-th family member.

    Two half twists of the p strands on the twisted band (together a full
    twist), then strand p passing across the others, then a single crossing
    with the strand on the second band.
    """
    if p < 2:
        raise BraidError(f"gamma_braid needs p >= 2, got {p}")
    n = p + 1
    half = halftwist(p, strands=n)
    cross = BraidWord(n, tuple(range(p - 1, 0, -1)) + (p,))
    return compose(compose(half, half), cross)


def is_coprime(a: int, b: int) -> bool:
    return math.gcd(a, b) == 1
