import math
from dataclasses import replace

import numpy as np
import pytest
from scipy import constants

from deltawave import analytic, waveguide
from deltawave.errors import DomainError
from deltawave.model import PAPER_ATOM, PAPER_DRIVES, DriveConfig, Rabi
from deltawave.steady import steady_state


def j_oracle(omega21_ghz, gamma21_mhz, z):
    return math.sqrt(constants.hbar * (constants.pi * 2e9 * omega21_ghz)
                     * (constants.pi * 2e6 * gamma21_mhz) / z)


def test_j_scale_reference():
    j = waveguide.j_scale(PAPER_ATOM)
    assert j == pytest.approx(j_oracle(10.96, 11.0, 50.0), rel=1e-14)
    assert j == pytest.approx(3.168e-9, abs=5e-13)
    assert j / 2 == pytest.approx(1.584e-9, abs=5e-13)


def test_j_scale_square_root_dependence():
    j = waveguide.j_scale(PAPER_ATOM)
    assert waveguide.j_scale(replace(PAPER_ATOM, gamma_pop_21=44.0)) == pytest.approx(2 * j)
    assert waveguide.j_scale(replace(PAPER_ATOM, line_impedance=200.0)) == pytest.approx(j / 2)


def test_emission_amplitude_at_resonance():
    rho21 = steady_state(PAPER_ATOM, PAPER_DRIVES).rho21
    ig = waveguide.emission_amplitude(PAPER_ATOM, rho21)
    assert ig == pytest.approx(1j * waveguide.j_scale(PAPER_ATOM) * rho21)
    assert abs(ig) == pytest.approx(0.518e-9, abs=5e-13)
    closed = waveguide.j_scale(PAPER_ATOM) * 35 * 35 * 35 / 262150
    assert abs(ig) == pytest.approx(closed, rel=1e-9)


def test_emission_amplitude_zero():
    assert waveguide.emission_amplitude(PAPER_ATOM, 0) == 0


def test_saturated_emission():
    sat = waveguide.saturated_emission(PAPER_ATOM)
    assert sat == pytest.approx(waveguide.j_scale(PAPER_ATOM) * 35 / (108 + 70), rel=1e-14)
    assert sat == pytest.approx(0.623e-9, abs=5e-13)
    # large common drive approaches the limit from below
    big = DriveConfig(Rabi(3000, 0), Rabi(3000, 0))
    ig = abs(waveguide.emission_amplitude(PAPER_ATOM, steady_state(PAPER_ATOM, big).rho21))
    assert ig == pytest.approx(sat, rel=1e-4)
    assert ig < sat


def switch_off_drives(o21=None):
    o21 = analytic.switch_off_probe(PAPER_ATOM, PAPER_DRIVES) if o21 is None else o21
    return replace(PAPER_DRIVES, rabi_21=Rabi(o21, 0.0)).with_theta(math.pi / 2)


def test_unidirectional_emission_at_switch_off():
    d = switch_off_drives()
    amps = waveguide.total_field(PAPER_ATOM, d, steady_state(PAPER_ATOM, d).rho21)
    assert abs(amps.i_total_right) < 0.005e-9
    assert abs(amps.i_total_left_reflected) > 0.5e-9
    assert amps.i_total_right - amps.i_probe == pytest.approx(amps.i_total_left_reflected, abs=1e-24)


def test_transparent_atom():
    amps = waveguide.total_field(PAPER_ATOM, switch_off_drives(), 0j)
    assert amps.t == 1
    assert amps.r == 0


def test_undriven_transmission_at_paper_dephasing():
    d = DriveConfig(rabi_21=Rabi(0.01, 0.0))
    amps = waveguide.total_field(PAPER_ATOM, d, steady_state(PAPER_ATOM, d).rho21)
    assert 0.48 <= amps.transmission_power <= 0.49


def test_t_requires_probe():
    amps = waveguide.total_field(PAPER_ATOM, PAPER_DRIVES, 0.1j)
    assert amps.t is None and amps.r is None
    with pytest.raises(DomainError):
        waveguide.total_field(PAPER_ATOM, PAPER_DRIVES, 0.1j, need_t=True)
    with pytest.raises(DomainError):
        waveguide.transmission(PAPER_ATOM, 0, 0.1)


def test_two_total_current_routes_agree(rng):
    for _ in range(100):
        o21 = complex(*rng.normal(size=2))
        rho = complex(*rng.normal(size=2)) * 0.3
        d = replace(PAPER_DRIVES, rabi_21=Rabi.from_complex(o21))
        amps = waveguide.total_field(PAPER_ATOM, d, rho)
        scaled = waveguide.total_current_scaled(PAPER_ATOM, d.rabi_21.value, rho)
        assert abs(amps.i_total_right) == pytest.approx(scaled, rel=1e-12)


def test_transmission_gauge_invariant(rng):
    base = switch_off_drives(1.2).with_delta(7.0)
    t_ref = abs(waveguide.total_field(PAPER_ATOM, base, steady_state(PAPER_ATOM, base).rho21).t)
    for _ in range(20):
        a, b = rng.uniform(0, 2 * math.pi, size=2)
        d = DriveConfig(Rabi(35, a), Rabi(35, b), Rabi(1.2, base.rabi_21.phase + a - b),
                        base.detuning_31, base.detuning_32)
        t = waveguide.total_field(PAPER_ATOM, d, steady_state(PAPER_ATOM, d).rho21).t
        assert abs(t) == pytest.approx(t_ref, abs=1e-10)


@pytest.mark.parametrize("o21", [0.01, 0.5, 1.78, 5.0, 20.0])
@pytest.mark.parametrize("delta", [-60.0, -10.0, 0.0, 3.0, 40.0])
@pytest.mark.parametrize("dephasing", [0.0, 12.5])
def test_undriven_atom_is_passive(o21, delta, dephasing):
    p = PAPER_ATOM.with_pure_dephasing(dephasing)
    d = DriveConfig(rabi_21=Rabi(o21, 0.3)).with_delta(delta)
    amps = waveguide.total_field(p, d, steady_state(p, d).rho21)
    t2, r2 = abs(amps.t) ** 2, abs(amps.r) ** 2
    assert t2 <= 1 + 1e-8
    assert t2 + r2 <= 1 + 1e-8
