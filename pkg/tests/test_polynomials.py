import random
from fractions import Fraction

import numpy as np
import pytest
import sympy

from src.graphs.operations import (
    cycle_graph,
    delete_vertices,
    parallel_compose,
    path_graph,
    series_compose,
)
from src.graphs.scalar import QuadraticScalar
from src.polynomials.charpoly import (
    bareiss_det,
    berkowitz,
    charpoly,
    charpoly_schwenk,
    interior_charpoly_product,
    path_sum,
    path_sum_adjugate,
    path_sum_poly,
    series_charpoly,
    vertex_deleted_charpolys,
)
from src.polynomials.polynomial import Polynomial, poly_gcd
from src.polynomials.rational import PoleError, RationalFunction, laurent_expand, rf_arith, rf_derivative
from src.utils.errors import MixedRadicalError, ResourceLimitError

from . import TOL
from .corpus import corpus, random_graph

Y = Polynomial.y()


def _sympy_charpoly(g) -> Polynomial:
    x = sympy.Symbol('x')
    h = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row]
                      for row in g.hamiltonian_exact()])
    descending = h.charpoly(x).all_coeffs()
    return Polynomial(Fraction(int(c.p), int(c.q)) for c in reversed(descending))


def test_berkowitz_small():
    assert berkowitz([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]) == [1, 0, -1]
    assert berkowitz([]) == [1]


def test_path_charpoly():
    assert charpoly(path_graph(2)) == Polynomial([0, -2, 0, 1])
    assert charpoly(path_graph(3)) == Polynomial([1, 0, -3, 0, 1])


@pytest.mark.parametrize("seed", range(6))
def test_charpoly_matches_sympy(seed):
    for g in corpus(seed, 5, potentials=True):
        assert charpoly(g) == _sympy_charpoly(g)


@pytest.mark.parametrize("seed", range(4))
def test_schwenk_expansion_agrees(seed):
    for g in corpus(100 + seed, 5, potentials=True):
        phi = charpoly(g)
        for v in range(g.n):
            assert charpoly_schwenk(g, v) == phi


@pytest.mark.parametrize("seed", range(6))
def test_path_sum_square_identity(seed):
    for g in corpus(200 + seed, 6, potentials=True):
        polys = vertex_deleted_charpolys(g)
        p = path_sum_poly(g, *g.terminals)
        assert p * p == polys.phi1 * polys.phi2 - polys.phi * polys.phi12


@pytest.mark.parametrize("seed", range(6))
def test_adjugate_matches_enumeration(seed):
    for g in corpus(300 + seed, 6, sizes=(2, 3, 4, 5, 6), potentials=True):
        u, v = g.terminals
        assert path_sum_adjugate(g, u, v) == path_sum_poly(g, u, v)
        assert path_sum_adjugate(g, v, u) == path_sum_poly(g, v, u)


def test_path_sum_theta_graph():
    # two branches: the short one leaves a 3-vertex path, the long one a single vertex
    g = parallel_compose([path_graph(2), path_graph(4)])
    assert path_sum_poly(g, 0, 1) == Polynomial([0, -1, 0, 1])


def test_path_sum_large_graph_uses_adjugate():
    g = path_graph(20)
    with pytest.raises(ResourceLimitError):
        path_sum_poly(g, *g.terminals)
    assert path_sum(g, *g.terminals) == Polynomial.one()


def test_hermitian_identity_nonnegative():
    rng = random.Random(7)
    ys = np.linspace(-4, 4, 41)
    for _ in range(5):
        g = random_graph(rng, rng.choice((3, 4, 5)), mode='hermitian')
        polys = vertex_deleted_charpolys(g)
        for y in ys:
            value = polys.phi1(float(y)) * polys.phi2(float(y)) - polys.phi(float(y)) * polys.phi12(float(y))
            assert value >= -1e-7 * max(1.0, abs(float(y)) ** (2 * g.n))


@pytest.mark.parametrize("seed", range(4))
def test_series_charpoly(seed):
    rng = random.Random(400 + seed)
    g1 = random_graph(rng, rng.choice((2, 3, 4)), potentials=True)
    g2 = random_graph(rng, rng.choice((2, 3, 4)), potentials=True)
    assert series_charpoly(g1, g2) == charpoly(series_compose(g1, g2))


def test_interior_charpoly_of_parallel():
    gs = [path_graph(2), path_graph(3), cycle_graph(4, terminals=(0, 2))]
    joined = parallel_compose(gs)
    assert vertex_deleted_charpolys(joined).phi12 == interior_charpoly_product(gs)


def test_bareiss_matches_sympy():
    rng = random.Random(11)
    for n in (1, 2, 3, 5):
        m = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        expected = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in m]).det()
        assert bareiss_det(m) == Fraction(int(expected.p), int(expected.q))
    assert bareiss_det([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]) == -1


def test_induced_subgraph_charpoly_empty():
    assert charpoly(delete_vertices(path_graph(1), {0, 1})) == Polynomial.one()


def test_poly_gcd():
    a = (Y - 1) * (Y + 2)
    b = (Y - 1) * (Y - 3)
    assert poly_gcd(a, b) == Y - 1
    assert poly_gcd(Polynomial(), Polynomial()).is_zero


def test_rational_function_reduction():
    f = RationalFunction(Y * Y - 1, Y - 1)
    assert f.den == Polynomial.one()
    assert f.num == Y + 1
    assert RationalFunction(2 * Y, 2 * Y * Y) == RationalFunction(Polynomial.one(), Y)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(Y, Polynomial())


def test_rf_arith():
    a = RationalFunction(Polynomial.one(), Y)
    b = RationalFunction(Y, Y + 1)
    assert rf_arith(a, b, '+') == RationalFunction(Y * Y + Y + 1, Y * Y + Y)
    assert rf_arith(a, b, '*') == RationalFunction(Polynomial.one(), Y + 1)
    assert rf_arith(rf_arith(a, b, '/'), b, '*') == a
    with pytest.raises(ValueError):
        rf_arith(a, b, '^')
    with pytest.raises(ZeroDivisionError):
        rf_arith(a, RationalFunction(Polynomial()), '/')


def test_evaluation_at_pole():
    f = RationalFunction(Polynomial.one(), Y - 1)
    assert f.has_pole_at(Fraction(1))
    with pytest.raises(PoleError):
        f(Fraction(1))


def test_derivative_against_finite_difference():
    f = RationalFunction(Y * Y - 2, Y * (Y * Y - 4))
    df = rf_derivative(f)
    h = 1e-6
    for y in (0.3, 1.1, 2.7):
        numeric = (float(f(y + h)) - float(f(y - h))) / (2 * h)
        assert abs(float(df(y)) - numeric) < 1e-5


def test_laurent_simple_pole():
    f = RationalFunction(Y * Y - 1, Y)
    e = laurent_expand(f, Fraction(0), 1)
    assert e.order == -1
    assert e.residue == -1
    assert e.coefficient(0) == 0
    assert e.coefficient(1) == 1


def test_laurent_float_point():
    f = RationalFunction(Polynomial.one(), Y * Y - 2)
    e = laurent_expand(f, 2 ** 0.5, 1, TOL)
    assert e.order == -1
    assert abs(complex(e.residue) - 1 / (2 * 2 ** 0.5)) < 1e-9


@pytest.mark.parametrize("length, y0", [(2, Fraction(0)), (4, Fraction(0))])
def test_admittance_components_have_simple_poles(length, y0):
    polys = vertex_deleted_charpolys(path_graph(length))
    p = path_sum_poly(path_graph(length), 0, length)
    for num in (Y * polys.phi12 - polys.phi1, p):
        e = laurent_expand(RationalFunction(num, polys.phi12), y0, 1)
        assert e.order >= -1


R2 = QuadraticScalar.sqrt(2)


def test_polynomial_over_quadratic_field():
    p = (Y - R2) * (Y + 1)
    assert p.coeffs == (-R2, 1 - R2, Fraction(1))
    assert p(R2) == 0
    assert p(Fraction(2)) == 6 - 3 * R2
    q, r = p.divmod(Y - R2)
    assert q == Y + 1 and r.is_zero
    assert poly_gcd(p, (Y - R2) * (Y - 3)) == Y - R2
    assert p.multiplicity_at(R2) == 1
    assert ((Y - R2) ** 2).multiplicity_at(R2) == 2
    assert abs(p(2 ** 0.5)) < TOL


def test_polynomial_rejects_mixed_radicals():
    with pytest.raises(MixedRadicalError):
        Polynomial([R2, QuadraticScalar.sqrt(3)])
    with pytest.raises(MixedRadicalError):
        (Y - R2) + QuadraticScalar.sqrt(3)
    with pytest.raises(MixedRadicalError):
        (Y - R2)(QuadraticScalar.sqrt(5))


def test_taylor_shift():
    p = Y * Y - 2
    assert p.taylor_shift(R2) == Polynomial([0, 2 * R2, 1])
    coefficients = p.taylor_coefficients(2 ** 0.5)
    assert np.allclose(coefficients, [0, 2 * 2 ** 0.5, 1], atol=TOL)


def test_rational_function_reduction_over_quadratic_field():
    f = RationalFunction((Y - R2) * (Y + 2), (Y - R2) * (Y * Y - 2 + R2))
    assert f.den == Polynomial([-2 + R2, 0, 1])
    assert f.num == Y + 2
    assert f(Fraction(0)) == 2 / (-2 + R2)


def test_laurent_at_quadratic_pole():
    f = RationalFunction(Polynomial.one(), Y * Y - 2)
    e = laurent_expand(f, R2, 1)
    assert e.order == -1
    assert e.residue == R2 / 4
    # 1/(t (t + 2 sqrt 2)) = 1/(2 sqrt 2 t) - 1/8 + t/(16 sqrt 2) + ...
    assert e.coefficient(0) == Fraction(-1, 8)
    assert e.coefficient(1) == R2 / 32
    g = RationalFunction(Y * Y - 2, Y)
    assert laurent_expand(g, R2, 1).order == 1
    assert laurent_expand(g, R2, 1).coefficient(1) == 2
