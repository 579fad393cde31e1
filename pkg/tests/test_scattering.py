import cmath
import random

import numpy as np
import pytest

from src.graphs.momentum import Momentum
from src.graphs.operations import cycle_graph, extend_up_leads, path_graph, single_vertex, star_graph
from src.scattering import (
    RAW,
    calibrate_sign,
    check_pt_charpoly,
    check_unitarity,
    get_calibration,
    max_difference,
    same_vertex_smatrix,
    shift_phase,
    smatrix_closed,
    smatrix_closed2,
    smatrix_oracle,
    symmetry_defect,
    transmission_phase_charpoly,
    transmission_probability,
    unshift_phase,
)
from src.scattering.oracle import k_phase
from src.utils.errors import ModeError

from . import TOL
from .corpus import corpus, random_graph

MOMENTA = [Momentum(-0.7), Momentum(-1.2345), Momentum(-1.9), Momentum(-2.6)]


def test_calibrated_sign():
    cal = calibrate_sign()
    assert cal.sigma == -1
    assert abs(cal.oracle_value + cal.closed_raw_value) < TOL
    assert get_calibration().sigma == cal.sigma


@pytest.mark.parametrize("length", [1, 2, 3, 5])
@pytest.mark.parametrize("k", [Momentum(-0.7), Momentum.from_literal('-pi/4')])
def test_path_transmits_with_length_phase(length, k):
    s = smatrix_oracle(path_graph(length), k)
    assert abs(s[0, 0]) < TOL
    assert abs(s[0, 1] - k_phase(k, length)) < TOL


@pytest.mark.parametrize("seed", range(5))
def test_oracle_unitary_and_symmetric(seed):
    for g in corpus(500 + seed, 4, potentials=True):
        for k in MOMENTA:
            s = smatrix_oracle(g, k)
            assert check_unitarity(s) < 1e-8
            assert symmetry_defect(s) < 1e-8


@pytest.mark.parametrize("seed", range(5))
def test_closed_form_matches_oracle(seed):
    cal = get_calibration()
    for g in corpus(600 + seed, 4, potentials=True):
        for k in MOMENTA:
            oracle = smatrix_oracle(g, k)
            closed = smatrix_closed2(g, k, cal)
            assert max_difference(oracle, closed) < 1e-8


def test_raw_closed_form_differs_by_offdiagonal_sign():
    g = cycle_graph(5, terminals=(0, 2))
    k = Momentum(-1.1)
    oracle = smatrix_oracle(g, k)
    raw = smatrix_closed2(g, k, RAW)
    assert max_difference(oracle, raw, offdiagonal_sign=-1) < 1e-8


@pytest.mark.parametrize("g", [star_graph(3), single_vertex(), star_graph(2, terminals=(1, 1))])
def test_same_vertex_closed_form(g):
    cal = get_calibration()
    for k in MOMENTA:
        assert max_difference(smatrix_oracle(g, k), same_vertex_smatrix(g, k, cal)) < 1e-8
        assert max_difference(smatrix_oracle(g, k), smatrix_closed(g, k, cal)) < 1e-8


def test_closed_form_layout_checks():
    cal = get_calibration()
    k = Momentum(-1.0)
    with pytest.raises(ModeError):
        smatrix_closed2(star_graph(3), k, cal)
    with pytest.raises(ModeError):
        same_vertex_smatrix(path_graph(2), k, cal)


def test_exact_flag_on_named_momenta():
    s = smatrix_closed2(path_graph(3), Momentum.from_literal('-pi/4'), get_calibration())
    assert 'exact' in s.flags
    s = smatrix_closed2(path_graph(3), Momentum(-0.9), get_calibration())
    assert 'exact' not in s.flags


def test_hermitian_transmission_probability():
    rng = random.Random(21)
    cal = get_calibration()
    for _ in range(4):
        g = random_graph(rng, rng.choice((3, 4)), mode='hermitian')
        for k in MOMENTA:
            oracle = smatrix_oracle(g, k)
            closed = smatrix_closed2(g, k, cal)
            assert np.isnan(closed[0, 1])
            assert abs(closed[0, 0] - oracle[0, 0]) < 1e-8
            assert abs(transmission_probability(g, k) - abs(oracle[0, 1]) ** 2) < 1e-8


def test_extended_precision_agrees():
    g = cycle_graph(6, terminals=(0, 3))
    k = Momentum(-1.3)
    a = smatrix_oracle(g, k)
    b = smatrix_oracle(g, k, precision='extended')
    assert 'extended_precision' in b.flags
    assert max_difference(a, b) < 1e-10


def test_interior_bound_state_still_solved():
    # y = 0 is an interior eigenvalue of the 4-edge path
    g = path_graph(4)
    s = smatrix_oracle(g, Momentum.from_literal('-pi/2'))
    assert check_unitarity(s) < 1e-6
    assert abs(abs(s[0, 1]) - 1) < 1e-6


def test_phase_shift_round_trip():
    s = smatrix_oracle(cycle_graph(4, terminals=(0, 2)), Momentum(-0.8))
    shifted = shift_phase(s, 1, power=2)
    assert abs(shifted[1, 1] - s[1, 1] * s.k.z ** 4) < TOL
    assert max_difference(unshift_phase(shift_phase(s, 0), 0), s) < TOL
    with pytest.raises(IndexError):
        shift_phase(s, 2)


def test_charpoly_pt_check_exact():
    k = Momentum.from_literal('-pi/4')
    assert check_pt_charpoly(path_graph(3), k).holds
    assert check_pt_charpoly(path_graph(3), k).exact
    assert check_pt_charpoly(path_graph(2), Momentum.from_literal('-pi/2')).holds
    assert not check_pt_charpoly(cycle_graph(5, terminals=(0, 2)), k).holds


@pytest.mark.parametrize("length", [1, 2, 3])
def test_transmission_phase_of_paths(length):
    k = Momentum.from_literal('-pi/4')
    phase = transmission_phase_charpoly(path_graph(length), k, get_calibration())
    assert abs(phase - smatrix_oracle(path_graph(length), k)[0, 1]) < TOL
    assert abs(phase - cmath.exp(1j * length * k.k)) < TOL


EXACT_MOMENTA = [Momentum.from_literal('-pi/3'), Momentum.from_literal('-pi/4'),
                 Momentum.from_literal('-2pi/3')]


@pytest.mark.parametrize("g", [cycle_graph(4, terminals=(0, 2)), path_graph(3),
                               cycle_graph(5, terminals=(0, 2)), star_graph(3, terminals=(1, 2))])
@pytest.mark.parametrize("k", EXACT_MOMENTA)
def test_extended_leads_shift_both_phases(g, k):
    extended = smatrix_oracle(extend_up_leads(g), k)
    expected = shift_phase(shift_phase(smatrix_oracle(g, k), 0), 1)
    assert max_difference(extended, expected) < TOL
    assert abs(extended[0, 1] - k.z ** 2 * smatrix_oracle(g, k)[0, 1]) < TOL


@pytest.mark.parametrize("g, k", [(cycle_graph(4, terminals=(0, 2)), k) for k in EXACT_MOMENTA]
                         + [(cycle_graph(5, terminals=(0, 2)), k) for k in MOMENTA])
def test_extended_leads_closed_form(g, k):
    cal = get_calibration()
    extended = smatrix_closed2(extend_up_leads(g), k, cal)
    expected = shift_phase(shift_phase(smatrix_closed2(g, k, cal), 0), 1)
    assert max_difference(extended, expected) < TOL


@pytest.mark.parametrize("length", [0, 1, 2, 3])
@pytest.mark.parametrize("k", MOMENTA + EXACT_MOMENTA)
def test_single_lead_on_dangling_path_reflects(length, k):
    # one lead on vertex 0; the chain ends `length` sites further on
    g = single_vertex() if length == 0 else path_graph(length)
    s = smatrix_oracle(g, k, terminals=[0])
    assert s.size == 1
    assert abs(s[0, 0] + cmath.exp(2j * k.k * (length + 1))) < TOL
