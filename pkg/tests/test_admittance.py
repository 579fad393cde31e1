import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from src.admittance import (
    PARTIAL,
    PERFECT_REFLECTION,
    PERFECT_TRANSMISSION,
    admittance,
    admittance_matrix,
    charpoly_ratio,
    check_pr,
    check_pt,
    check_pt_pole,
    derivatives_at,
    effective_length,
    effective_length_from_values,
    evaluate,
    hyperbola_param,
    hyperbola_residual,
    parallel_add,
    parallel_effective_length,
    phase_from_point,
    scale,
    series_combine,
    smatrix_from_admittance,
    smatrix_from_y,
    synthetic_triple,
)
from src.graphs.momentum import Momentum
from src.graphs.operations import cycle_graph, parallel_compose, path_graph, series_compose, star_graph
from src.graphs.scalar import QuadraticScalar
from src.polynomials.charpoly import charpoly, vertex_deleted_charpolys
from src.polynomials.polynomial import Polynomial, poly_gcd
from src.polynomials.rational import RationalFunction, laurent_expand
from src.scattering import check_pt_charpoly, get_calibration, max_difference, smatrix_oracle
from src.utils.errors import DegenerateError, ModeError

from . import TOL
from .corpus import corpus, random_graph, unit_graphs

Y = Polynomial.y()
R2 = QuadraticScalar.sqrt(2)
R3 = QuadraticScalar.sqrt(3)
PI_4 = Momentum.from_literal('-pi/4')
PI_6 = Momentum.from_literal('-pi/6')


def example2_triples():
    g1 = synthetic_triple(RationalFunction(2 * (Y * Y - 2), Y * (Y * Y - 4)),
                          RationalFunction(Polynomial([4]), Y * (Y * Y - 4)), name='G1')
    g2 = synthetic_triple(RationalFunction(2 * Y, Y * Y - 1), RationalFunction(2 * Y, Y * Y - 1),
                          name='G2')
    return g1, g2


@pytest.mark.parametrize("length, mu, nu", [
    (1, Fraction(0), Fraction(1)),
    (2, R2 / 2, R2 / 2),
    (3, R2, Fraction(1)),
    (5, Fraction(0), Fraction(-1)),
])
def test_path_values_at_quarter_pi(length, mu, nu):
    p = evaluate(admittance(path_graph(length)), R2)
    assert p.exact and p.finite
    assert p.mu1 == p.mu2 == mu
    assert p.nu == nu


def test_three_edge_path_functions():
    t = admittance(path_graph(3))
    assert t.mu1 == RationalFunction(Y, Y * Y - 1)
    assert t.nu == RationalFunction(Polynomial.one(), Y * Y - 1)
    assert t.symmetric


def test_admittance_rejects_hermitian_and_coincident():
    rng = random.Random(3)
    with pytest.raises(ModeError):
        admittance(random_graph(rng, 3, mode='hermitian'))
    with pytest.raises(ModeError):
        admittance(star_graph(3))


@pytest.mark.parametrize("seed", range(5))
def test_charpoly_ratio_identity(seed):
    for g in corpus(700 + seed, 5, potentials=True):
        t = admittance(g)
        polys = vertex_deleted_charpolys(g)
        assert charpoly_ratio(t) == RationalFunction(charpoly(g), polys.phi12)


@pytest.mark.parametrize("seed", range(4))
def test_mu_nu_smatrix_matches_oracle(seed):
    cal = get_calibration()
    for g in corpus(800 + seed, 4, potentials=True):
        t = admittance(g)
        for k in (Momentum(-0.6), Momentum(-1.7), Momentum(-2.4)):
            p = evaluate(t, k.y)
            oracle = smatrix_oracle(g, k)
            s = smatrix_from_admittance(p, k, cal)
            assert max_difference(oracle, s) < 1e-8
            assert np.max(np.abs(smatrix_from_y(admittance_matrix(p, k, cal)) - oracle.entries)) < 1e-8


def test_example1_point_is_on_hyperbola():
    assert hyperbola_residual(4 * R2, Fraction(5), R2) == 0
    assert hyperbola_residual(4 * R2, Fraction(-5), R2) == 0
    assert hyperbola_residual(R2, Fraction(1), R2) == 0
    assert hyperbola_residual(R2, Fraction(2), R2) != 0


def test_example1_gadget_transmits():
    t = parallel_add([scale(admittance(path_graph(3)), 4), scale(admittance(path_graph(5)), 9)])
    p = evaluate(t, R2)
    assert (p.mu, p.nu) == (4 * R2, Fraction(-5))
    result = check_pt(p, PI_4)
    assert result.status == PERFECT_TRANSMISSION
    assert result.exact
    assert result.hyperbola_residual == 0


def test_example2_sum():
    g1, g2 = example2_triples()
    t = parallel_add([g1, g2])
    p = evaluate(t, R3)
    assert p.mu1 == p.mu2 == 1 / R3
    assert p.nu == -1 / R3
    assert t.source == 'G1 || G2'
    assert t.origin == 'synthetic'


def test_example2_phase_and_effective_length():
    g1, g2 = example2_triples()
    t = parallel_add([g1, g2])
    result = check_pt(evaluate(t, R3), PI_6)
    assert result.is_pt
    assert abs(result.theta_printed + math.pi / 3) < TOL
    assert abs(result.theta - 2 * math.pi / 3) < TOL
    assert result.details["cos_theta_printed"] == Fraction(1, 2)
    dmu1, dmu2, dnu = derivatives_at(t, R3)
    assert dmu1 == dmu2 == Fraction(-28, 3)
    assert dnu == Fraction(-26, 3)
    assert effective_length(t, PI_6, result) == 11


def test_example2_parallel_derivative_formula():
    g1, g2 = example2_triples()
    points = [evaluate(g, R3) for g in (g1, g2)]
    derivatives = [derivatives_at(g, R3) for g in (g1, g2)]
    assert parallel_effective_length(points, derivatives, R3) == 11


def test_example3_effective_length():
    mu = Fraction(1, 4) + R2 / 2
    nu = Fraction(-3, 4)
    dmu = Fraction(-5, 2) + R2 / 4
    dnu = -3 * R2 / 4
    assert hyperbola_residual(mu, nu, R2) == 0
    assert (mu - R2 / 2) / nu == Fraction(-1, 3)
    assert effective_length_from_values(mu, nu, dmu, dmu, dnu, R2) == 6
    # flipping the sign of nu together with nu' leaves the length unchanged
    assert effective_length_from_values(mu, -nu, dmu, dmu, -dnu, R2) == 6


def test_example3_printed_mu_is_off_hyperbola():
    assert hyperbola_residual(Fraction(1, 4) + R2 / 4, Fraction(-3, 4), R2) != 0


@pytest.mark.parametrize("length", [1, 2, 3, 5, 6, 7])
def test_path_effective_length_exact(length):
    t = admittance(path_graph(length))
    result = check_pt(evaluate(t, R2), PI_4)
    assert result.is_pt and result.branch == 'regular'
    assert effective_length(t, PI_4, result) == length


@pytest.mark.parametrize("length", [1, 3, 4])
@pytest.mark.parametrize("k", [-0.5, -1.3, -2.2])
def test_path_phase_and_length_float(length, k):
    momentum = Momentum(k)
    t = admittance(path_graph(length))
    result = check_pt(evaluate(t, momentum.y), momentum)
    assert result.is_pt
    oracle = smatrix_oracle(path_graph(length), momentum)
    assert abs(cmath.exp(1j * result.theta) - oracle[0, 1]) < 1e-8
    assert abs(effective_length(t, momentum, result) - length) < 1e-8


def test_pole_branch_two_edge_path():
    k = Momentum.from_literal('-pi/2')
    t = admittance(path_graph(2))
    p = evaluate(t, k.y)
    assert not p.finite
    result = check_pt(p, k)
    assert result.status == PERFECT_TRANSMISSION
    assert result.branch == 'pole'
    assert result.theta_printed == 0.0
    assert abs(result.theta) == pytest.approx(math.pi)
    assert check_pt_pole(t, k.y, k).status == PERFECT_TRANSMISSION
    with pytest.raises(ModeError):
        effective_length(t, k, result)


def test_pole_branch_four_edge_path():
    t = admittance(path_graph(4))
    result = check_pt(evaluate(t, R2), PI_4)
    assert result.branch == 'pole'
    assert result.is_pt
    assert result.details["sign"] == "1"
    oracle = smatrix_oracle(path_graph(4), PI_4)
    assert abs(cmath.exp(1j * result.theta) - oracle[0, 1]) < 1e-6


def test_pole_branch_asymmetric_residues_reflect():
    k = Momentum.from_literal('-pi/2')
    t = admittance(star_graph(2, terminals=(1, 0)))
    result = check_pt(evaluate(t, k.y), k)
    assert result.branch == 'pole'
    assert result.status == PARTIAL
    assert result.details["residues_equal"] is False


def test_pole_check_rejects_regular_point():
    with pytest.raises(ValueError):
        check_pt_pole(admittance(path_graph(3)), R2, PI_4)


def test_eight_cycle_reflects():
    t = parallel_add([admittance(path_graph(3)), admittance(path_graph(5))])
    assert t == admittance(parallel_compose([path_graph(3), path_graph(5)]))
    p = evaluate(t, R2)
    assert p.nu == 0
    assert check_pr(p, k=PI_4).status == PERFECT_REFLECTION
    assert check_pt(p, PI_4).status == PERFECT_REFLECTION
    oracle = smatrix_oracle(cycle_graph(8, terminals=(0, 4)), PI_4)
    assert abs(oracle[0, 1]) < 1e-9


def test_partial_transmission():
    p = evaluate(admittance(cycle_graph(5, terminals=(0, 2))), R2)
    assert check_pt(p, PI_4).status == PARTIAL
    assert check_pr(p, k=PI_4).status == PARTIAL


@pytest.mark.parametrize("seed", range(4))
def test_parallel_add_matches_parallel_compose(seed):
    rng = random.Random(900 + seed)
    gs = [random_graph(rng, rng.choice((2, 3, 4)), potentials=True) for _ in range(3)]
    assert parallel_add([admittance(g) for g in gs]) == admittance(parallel_compose(gs))


@pytest.mark.parametrize("seed", range(4))
def test_series_combine_matches_series_compose(seed):
    rng = random.Random(1000 + seed)
    g1 = random_graph(rng, rng.choice((2, 3, 4)), potentials=True)
    g2 = random_graph(rng, rng.choice((2, 3, 4)), potentials=True)
    assert series_combine(admittance(g1), admittance(g2)) == admittance(series_compose(g1, g2))


@pytest.mark.parametrize("a, b", [(1, 1), (1, 2), (2, 3)])
def test_series_of_paths(a, b):
    assert series_combine(admittance(path_graph(a)), admittance(path_graph(b))) == admittance(path_graph(a + b))


def test_series_degenerate_glue():
    t = synthetic_triple(RationalFunction(Y.scale(Fraction(1, 2))), RationalFunction.constant(1))
    with pytest.raises(DegenerateError):
        series_combine(t, t)


def test_scale_and_empty_parallel():
    t = admittance(path_graph(3))
    assert scale(t, 3) == parallel_add([t, t, t])
    with pytest.raises(ModeError):
        parallel_add([])


@pytest.mark.parametrize("theta", [-3.0, -2.0, -math.pi / 4, -0.2, 0.5, 2.0])
@pytest.mark.parametrize("k", [-0.4, -math.pi / 4, -2.5])
def test_hyperbola_param_round_trip(theta, k):
    momentum = Momentum(k)
    mu, nu = hyperbola_param(theta, momentum)
    assert abs(hyperbola_residual(mu, nu, momentum.epsilon)) < 1e-9
    assert abs(phase_from_point(mu, nu, momentum) - theta) < 1e-9


def test_hyperbola_anchor_row():
    mu, nu = hyperbola_param(-math.pi / 4, PI_4)
    assert abs(mu) < TOL
    assert abs(nu + 1) < TOL
    with pytest.raises(ValueError):
        hyperbola_param(0.0, PI_4)


def test_pt_result_json():
    result = check_pt(evaluate(admittance(path_graph(3)), R2), PI_4)
    doc = result.to_json()
    assert doc["status"] == PERFECT_TRANSMISSION
    assert doc["theta_convention"] == "physical"
    assert doc["theta_printed_convention"] == "printed"
    assert doc["sigma"] == -1


SWEEP_MOMENTA = [Momentum.from_literal('-pi/2'), Momentum.from_literal('-pi/3'), PI_4]


def _charpoly_decides(polys) -> bool:
    # a common root of phi1, phi2 and phi12 cancels from the reduced triple
    v = polys.values
    return not polys.degenerate and not (v["phi1"] == v["phi2"] == v["phi12"] == 0)


def test_pt_verdicts_on_all_small_unit_graphs():
    checked = transmitting = 0
    for g in unit_graphs(5):
        t = admittance(g)
        for k in SWEEP_MOMENTA:
            result = check_pt(evaluate(t, k.y), k)
            assert result.exact
            is_pt = result.status == PERFECT_TRANSMISSION
            polys = check_pt_charpoly(g, k)
            if _charpoly_decides(polys):
                assert polys.holds == is_pt, (g.edges, str(k))
            oracle = smatrix_oracle(g, k)
            if 'perturbed' in oracle.flags:
                continue
            assert (abs(oracle[0, 0]) < 1e-6) == is_pt, (g.edges, str(k))
            if is_pt:
                assert abs(oracle[0, 1]) >= 1 - 1e-8
            checked += 1
            transmitting += is_pt
    assert checked > 1500
    assert transmitting > 0


@pytest.mark.parametrize("seed", range(6))
def test_pt_verdicts_on_weighted_corpus(seed):
    for g in corpus(1100 + seed, 6, potentials=True):
        t = admittance(g)
        for k in SWEEP_MOMENTA:
            is_pt = check_pt(evaluate(t, k.y), k).status == PERFECT_TRANSMISSION
            polys = check_pt_charpoly(g, k)
            if _charpoly_decides(polys):
                assert polys.holds == is_pt
            oracle = smatrix_oracle(g, k)
            if 'perturbed' not in oracle.flags:
                assert (abs(oracle[0, 0]) < 1e-6) == is_pt


@pytest.mark.parametrize("seed", range(6))
def test_reduced_denominators_have_simple_roots(seed):
    for g in corpus(1200 + seed, 6, potentials=True):
        t = admittance(g)
        for f in (t.mu1, t.mu2, t.nu):
            if f.den.degree <= 0:
                continue
            assert poly_gcd(f.den, f.den.derivative()).degree == 0
            roots = np.roots([float(c) for c in reversed(f.den.coeffs)])
            for root in roots:
                assert abs(root.imag) < 1e-6
                e = laurent_expand(f, float(root.real), 1, 1e-7)
                assert e.order >= -1


def test_example2_transmits_only_at_root_three():
    g1, g2 = example2_triples()
    t = parallel_add([g1, g2])
    ys = np.linspace(-2, 2, 402)[1:-1]
    residuals = []
    for y in ys:
        p = evaluate(t, float(y))
        assert p.finite
        assert check_pt(p, Momentum(-math.acos(y / 2))).status != PERFECT_TRANSMISSION
        r = hyperbola_residual(p.mu, p.nu, float(y))
        # nu^2 - mu^2 + mu y - 1 of this sum reduces to 3(y^2 - 3)/(y^2 - 1)
        expected = 3 * (y * y - 3) / ((y * y - 1) * (1 - y * y / 4))
        assert abs(r - expected) < 1e-9 * max(1.0, abs(expected))
        residuals.append(r)
    signs = np.sign(residuals)
    crossings = [(ys[i], ys[i + 1]) for i in range(len(ys) - 1) if signs[i] != signs[i + 1]]
    roots = (-math.sqrt(3), -1.0, 1.0, math.sqrt(3))
    assert len(crossings) == len(roots)
    for (lo, hi), root in zip(crossings, roots):
        assert lo < root < hi
    for y, k in ((R3, PI_6), (-R3, Momentum.from_literal('-5pi/6'))):
        assert check_pt(evaluate(t, y), k).status == PERFECT_TRANSMISSION
