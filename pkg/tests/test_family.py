import math

import pytest

from lagtori.family import (
    FamilyError,
    LinkFamilyParams,
    NotCoprime,
    alexander_torus_knot,
    homology_class,
    linking_matrix,
    p_poly,
    specialization_x1,
    splice_q1,
    t_coefficients,
    torres_specialize,
)
from lagtori.laurent import from_coeffs, mul, substitute, symmetrize, term_count, var

from .conftest import expand, series_quotient

t, y = var("t"), var("y")
L = LinkFamilyParams


def torus_oracle(a, b):
    """Alexander polynomial of T(a, b) via the geometric-series expansion."""
    deg = (a - 1) * (b - 1)
    num = expand([(-1, 1), (-1, a * b)])
    return from_coeffs(series_quotient(num, [a, b], deg))


def p_oracle(p, q):
    # numerator (1 + t^(p+1) + ... + t^((p-1)(p+1)))(1 - t^q) times sum t^(kp)
    top = q - 1 + (p - 1) * (p + 1)
    num = {}
    for j in range(p):
        num[j * (p + 1)] = num.get(j * (p + 1), 0) + 1
        num[j * (p + 1) + q] = num.get(j * (p + 1) + q, 0) - 1
    return from_coeffs(series_quotient({e: c for e, c in num.items() if c}, [p], top))


class TestParams:
    def test_valid(self):
        assert L(5, 3).p == 5

    @pytest.mark.parametrize("p,q", [(3, 5), (2, 0), (0, 0)])
    def test_invalid(self, p, q):
        with pytest.raises(FamilyError):
            L(p, q)


class TestLinking:
    def test_5_3(self):
        assert linking_matrix(L(5, 3)).off_diagonal == (1, 0, 3)

    def test_2_1(self):
        assert linking_matrix(L(2, 1)).off_diagonal == (1, 0, 1)

    def test_independent_of_p(self):
        for q in range(1, 6):
            assert len({linking_matrix(L(p, q)) for p in range(q, q + 10)}) == 1

    def test_matrix_symmetric(self):
        m = linking_matrix(L(7, 4)).matrix()
        assert all(m[i][i] is None for i in range(3))
        assert all(m[i][j] == m[j][i] for i in range(3) for j in range(3))
        assert linking_matrix(L(7, 4)).lk("M", "gamma") == 4

    def test_homology(self):
        h = homology_class(L(5, 3))
        assert (h.a, h.b) == (0, 3)
        h = homology_class(L(2, 1))
        assert (h.a, h.b) == (0, 1)
        for p in range(1, 15):
            for q in range(1, p + 1):
                h = homology_class(L(p, q))
                assert (h.a, h.b) == (0, q)


class TestTorusKnot:
    def test_trefoil(self):
        assert alexander_torus_knot(2, 3) == 1 - t + t**2

    def test_unknot(self):
        for b in range(1, 8):
            assert alexander_torus_knot(1, b) == 1

    def test_5_6(self):
        P = alexander_torus_knot(5, 6)
        assert P == torus_oracle(5, 6)
        assert P.degree_range("t") == (0, 20)
        # the series oracle gives 9 terms (2p - 1 for T(p, p+1))
        assert term_count(P) == 9

    def test_not_coprime(self):
        with pytest.raises(NotCoprime):
            alexander_torus_knot(2, 4)

    @pytest.mark.parametrize("a,b", [(a, b) for a in range(2, 8) for b in range(a + 1, 12) if math.gcd(a, b) == 1])
    def test_against_series(self, a, b):
        assert alexander_torus_knot(a, b) == torus_oracle(a, b)

    def test_symmetric(self):
        for a in range(2, 9):
            s = symmetrize(alexander_torus_knot(a, a + 1))
            assert substitute(s, "t", t**-1) == s


class TestPPoly:
    def test_2_1(self):
        assert p_poly(L(2, 1)) == 1 - t + t**2

    def test_q1_is_torus_knot(self):
        for p in range(1, 30):
            assert p_poly(L(p, 1)) == alexander_torus_knot(p, p + 1)

    def test_5_3_survivors(self):
        P = p_poly(L(5, 3))
        assert [P.coeff(e) for e in (12, 17, 22)] == [1, 1, 1]

    @pytest.mark.parametrize("p", [2, 3, 5, 8, 13])
    def test_against_series(self, p):
        for q in range(1, p + 1):
            assert p_poly(L(p, q)) == p_oracle(p, q)

    def test_torres(self):
        assert torres_specialize(L(2, 1)) == 1 - t + t**2
        assert torres_specialize(L(2, 2)) == 1 + t**3
        for p in range(1, 20):
            for q in range(1, p + 1):
                assert torres_specialize(L(p, q)) == p_poly(L(p, q))

    def test_multiplication_form(self):
        for p in range(1, 20):
            for q in range(1, p + 1):
                assert mul(t - 1, p_poly(L(p, q))) == mul(t**q - 1, alexander_torus_knot(p, p + 1))


class TestSplice:
    def test_q1(self):
        s = splice_q1(2)
        assert set(s.variables) == {"y", "t"}
        assert s == 1 - t + t**2

    def test_consistency(self):
        for p in range(2, 12):
            s = splice_q1(p)
            assert substitute(s, "y", 1) == p_poly(L(p, 1))
            assert term_count(s) == term_count(alexander_torus_knot(p, p + 1))

    def test_too_small(self):
        with pytest.raises(FamilyError):
            splice_q1(1)

    def test_specialization(self):
        for p in range(2, 10):
            two = splice_q1(p)
            full = specialization_x1(L(p, 1), two)
            assert full == mul(y - 1, two)
            assert substitute(full, "y", 1) == 0
            nonzero_at_1 = sum(1 for a in t_coefficients(two).values() if substitute(a, "y", 1) != 0)
            assert term_count(full) >= nonzero_at_1

    def test_specialization_nontrivial_y(self):
        two = 1 + y * t - y**2 * t**3
        full = specialization_x1(L(4, 2), two)
        assert full == mul(y - 1, two)
        coeffs = t_coefficients(full)
        assert coeffs[1] == y**2 - y


def test_torres_grid_60():
    for p in range(1, 61):
        for q in range(1, p + 1):
            assert torres_specialize(L(p, q)) == p_poly(L(p, q))


def test_coefficients_in_unit_range_60():
    # observed on this grid only; not a proven property of P_{p,q}
    for p in range(1, 61):
        for q in range(1, p + 1):
            assert set(p_poly(L(p, q)).terms.values()) <= {-1, 1}
