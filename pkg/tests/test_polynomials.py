import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from starfactor.errors import GraphError, NoSignChangeError
from starfactor.graph import ExtremalParams, extremal_g1, extremal_g2, extremal_g_star, g2_independent_size
from starfactor.polynomials import (
    IntPolynomial,
    aux_f,
    aux_g,
    aux_h,
    beta_poly,
    cauchy_bound,
    charpoly,
    count_real_roots,
    count_roots_above,
    f_drop_closed_form,
    g2_distance_quotient,
    gamma_at_isolated_max,
    gamma_eval,
    largest_real_root,
    phi_b1,
    phi_b2,
    phi_b2_at_upper,
    phi_b_star,
    phi_b_star_at_upper,
    phi_b_star_bracket,
    three_block_distance_quotient,
)
from starfactor.spectral import distance_matrix, mu, quotient_matrix

X = sympy.Symbol("x")
GRID = [(n, m, b) for m in (2, 3, 4) for b in (1, 2, 3) for n in range((m + 1) * b, (m + 1) * b + 25)]


def sympy_charpoly(rows) -> list[int]:
    """Ascending integer coefficients of det(xI - M), computed by sympy."""
    coeffs = sympy.Matrix(rows).charpoly(X).all_coeffs()
    return [int(c) for c in reversed(coeffs)]


def poly(coeffs):
    return IntPolynomial(tuple(coeffs))


class TestIntPolynomial:
    def test_normalizes(self):
        assert poly([1, 2, 0, 0]).coeffs == (1, 2)
        assert poly([0]).coeffs == ()
        assert poly([Fraction(4, 2)]).coeffs == (2,)

    def test_rejects_non_integer(self):
        with pytest.raises(TypeError):
            poly([Fraction(1, 2)])
        with pytest.raises(TypeError):
            poly([1.0])

    def test_arithmetic(self):
        x = IntPolynomial.x()
        p = (x - 1) * (x + 2)
        assert p.coeffs == (-2, 1, 1)
        assert (p - p).coeffs == ()
        assert (3 - x).coeffs == (3, -1)
        assert p.derivative().coeffs == (1, 2)
        assert p(Fraction(1, 2)) == Fraction(-5, 4)

    def test_str(self):
        assert str(phi_b_star(10, 2, 1)) == "x^3 - 7x^2 - 41x - 25"
        assert str(poly([])) == "0"
        assert str(poly([0, -1])) == "-x"

    def test_json_big(self):
        p = poly([2**60, -3, 1])
        assert '"1152921504606846976"' in p.to_json()
        assert IntPolynomial.from_json(p.to_json()) == p

    @settings(max_examples=100)
    @given(st.lists(st.integers(-(2**70), 2**70), max_size=6))
    def test_json_roundtrip(self, cs):
        p = poly(cs)
        assert IntPolynomial.from_json(p.to_json()) == p

    @settings(max_examples=100)
    @given(st.lists(st.integers(-50, 50), max_size=5), st.lists(st.integers(-50, 50), max_size=5), st.integers(-20, 20))
    def test_mul_matches_evaluation(self, a, b, x0):
        assert (poly(a) * poly(b))(x0) == poly(a)(x0) * poly(b)(x0)
        assert (poly(a) + poly(b))(x0) == poly(a)(x0) + poly(b)(x0)


class TestCharpoly:
    def test_examples(self):
        assert charpoly([[1, 2], [3, 4]]).coeffs == (-2, -5, 1)
        assert charpoly([[0]]).coeffs == (0, 1)

    @settings(max_examples=60)
    @given(st.integers(1, 5).flatmap(lambda k: st.lists(st.lists(st.integers(-9, 9), min_size=k, max_size=k), min_size=k, max_size=k)))
    def test_matches_sympy(self, rows):
        assert list(charpoly(rows).coeffs) == sympy_charpoly(rows)

    def test_extremal_10_2_1(self):
        assert phi_b_star(10, 2, 1).coeffs == (-25, -41, -7, 1)
        assert three_block_distance_quotient(10, 2, 1) == [[0, 8, 1], [1, 7, 2], [1, 16, 0]]

    def test_phi_b1_27_2_3(self):
        # sympy on the quotient of the built graph: x^3 - 26x^2 - 178x + 134
        g, lab = extremal_g1(27, 2, 3)
        rows = quotient_matrix(distance_matrix(g), lab).as_int_rows()
        assert sympy_charpoly(rows) == [134, -178, -26, 1]
        assert phi_b1(27, 2, 3).coeffs == (134, -178, -26, 1)

    def test_phi_b2_27_2(self):
        g, lab = extremal_g2(27, 2)
        rows = quotient_matrix(distance_matrix(g), lab).as_int_rows()
        assert rows == [[16, 10], [17, 18]]
        assert sympy_charpoly(rows) == [118, -34, 1]
        assert phi_b2(27, 2).coeffs == (118, -34, 1)

    def test_phi_b2_8_3(self):
        assert g2_distance_quotient(8, 3) == [[4, 3], [5, 4]]
        assert phi_b2(8, 3).coeffs == (1, -8, 1)

    @pytest.mark.parametrize("n,m,b", GRID[::7])
    def test_closed_forms_match_graph_quotients(self, n, m, b):
        g, lab = extremal_g_star(ExtremalParams(n, m, b))
        rows = quotient_matrix(distance_matrix(g), lab).as_int_rows()
        assert rows == three_block_distance_quotient(n, m, b)
        assert list(phi_b_star(n, m, b).coeffs) == sympy_charpoly(rows)
        if n < m + 2:
            return
        g2, lab2 = extremal_g2(n, m)
        rows2 = quotient_matrix(distance_matrix(g2), lab2).as_int_rows()
        assert rows2 == g2_distance_quotient(n, m)
        assert list(phi_b2(n, m).coeffs) == sympy_charpoly(rows2)

    def test_invalid(self):
        with pytest.raises(GraphError):
            phi_b_star(5, 2, 2)
        with pytest.raises(GraphError):
            phi_b2(3, 2)


class TestAuxiliary:
    def test_f_example(self):
        assert aux_f(27, 2, 2) == 586
        g, _ = extremal_g1(27, 2, 2)
        assert aux_f(27, 2, 2) == 2 * g.num_edges - 27 + 1

    @pytest.mark.parametrize("n,m,b", GRID[::5])
    def test_f_g_match_graphs(self, n, m, b):
        for i in range(1, n // (m + 1) + 1):
            if m * i - 1 < 1:
                continue
            g, _ = extremal_g1(n, m, i)
            e2 = 2 * g.num_edges
            assert aux_f(n, m, i) == e2 - n + 1
            assert aux_g(n, m, i) == e2 + (n - 1) * (n - 2)
            assert aux_g(n, m, i) - aux_f(n, m, i) == (n - 1) ** 2

    def test_symbolic_identities(self):
        n, m, b, i = sympy.symbols("n m b i")
        r = n / (m + 1)
        drop = (n - m * b - m - b - 1) * (n - (2 * b + 2) * m**2 - (3 * b + 2) * m - b) / (m + 1) ** 2
        assert sympy.simplify(aux_f(n, m, b + 1) - aux_f(n, m, r) - drop) == 0
        assert sympy.simplify(aux_g(n, m, b + 1) - aux_g(n, m, r) - drop) == 0
        assert sympy.simplify(gamma_eval(n, m, b, r) * (m + 1) - (
            -n**2 + (3 * m**2 * b + 3 * m * b - 2 * b) * n - m**3 * b**2 + 4 * m**2 * b**2
            - m**2 * b + 5 * m * b**2 - 2 * m * b - b
        )) == 0

    @pytest.mark.parametrize("n,m,b", GRID[::3])
    def test_exact_grid(self, n, m, b):
        r = Fraction(n, m + 1)
        assert f_drop_closed_form(n, m, b) == aux_f(n, m, b + 1) - aux_f(n, m, r)
        assert gamma_at_isolated_max(n, m, b) == gamma_eval(n, m, b, r)
        c = g2_independent_size(n, m)
        assert aux_h(n, m) == (n - Fraction(n + 1, m + 1)) * (n + Fraction(n + 1, m + 1)) - n + 1
        assert c >= Fraction(n + 1, m + 1)
        assert phi_b_star_at_upper(n, m, b) == phi_b_star(n, m, b)(n + 3 * b - 1)
        if n >= m + 2:
            assert phi_b2_at_upper(n, m, b) == phi_b2(n, m)(n + 3 * b - 1)

    @pytest.mark.parametrize("n,m,b", GRID[::4])
    def test_beta_factorization(self, n, m, b):
        for i in range(1, n // (m + 1) + 1):
            if m * i - 1 < 1 or i == b:
                continue
            diff = phi_b1(n, m, i) - phi_b_star(n, m, b)
            assert diff == beta_poly(n, m, b, i) * (i - b)
            assert beta_poly(n, m, b, i)(n + 2 * b - 2) == gamma_eval(n, m, b, i)


class TestRoots:
    def test_sturm_counts(self):
        x = IntPolynomial.x()
        p = (x - 1) * (x - 2) * (x + 3)
        assert count_real_roots(p) == 3
        assert count_roots_above(p, 0) == 2
        assert count_roots_above(p, Fraction(3, 2)) == 1
        assert count_real_roots(x * x + 1) == 0
        assert cauchy_bound(p) == 8

    def test_largest_root_simple(self):
        x = IntPolynomial.x()
        assert largest_real_root(x * x - 2).root == pytest.approx(math.sqrt(2), rel=1e-10)
        assert largest_real_root((x - 5) * (x + 1)).root == pytest.approx(5, rel=1e-10)
        with pytest.raises(NoSignChangeError):
            largest_real_root(x * x + 1)
        with pytest.raises(NoSignChangeError):
            largest_real_root(poly([3]))

    def test_bad_hint_is_widened(self):
        x = IntPolynomial.x()
        p = (x - 100) * (x - 1)
        assert largest_real_root(p, (0, 2)).root == pytest.approx(100)
        assert largest_real_root(p, (200, 300)).root == pytest.approx(100)
        with pytest.raises(ValueError):
            largest_real_root(p, (3, 3))

    @settings(max_examples=100)
    @given(st.lists(st.integers(-30, 30), min_size=2, max_size=6))
    def test_matches_numpy(self, cs):
        p = poly(cs + [1])
        real = [r.real for r in np.roots(list(reversed(p.coeffs))) if abs(r.imag) < 1e-7]
        if count_real_roots(p) == 0:
            return
        res = largest_real_root(p)
        assert res.lo <= res.hi
        assert res.root == pytest.approx(max(real), rel=1e-6, abs=1e-6)

    @pytest.mark.parametrize("n,m,b", GRID[::6])
    def test_extremal_root_is_mu(self, n, m, b):
        res = largest_real_root(phi_b_star(n, m, b), phi_b_star_bracket(n, b))
        assert (res.hi - res.lo) <= 1e-10 * res.root
        g, _ = extremal_g_star(ExtremalParams(n, m, b))
        assert res.root == pytest.approx(mu(g), rel=1e-9)
