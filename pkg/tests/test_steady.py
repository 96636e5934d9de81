import math
from dataclasses import replace

import numpy as np
import pytest

from conftest import random_drives, random_physical_params, random_rabi
from deltawave.errors import DegenerateSteadyState, StepTooLarge
from deltawave.liouvillian import build_liouvillian, sigma
from deltawave.model import PAPER_ATOM, PAPER_DRIVES, AtomParams, DensityMatrix, DriveConfig, Rabi
from deltawave.steady import evolve, max_step, solve_steady, steady_convergence_report, steady_state

TWO_PI = 2 * math.pi


def test_undriven_steady_state_is_ground():
    rho = solve_steady(build_liouvillian(PAPER_ATOM, DriveConfig()))
    np.testing.assert_allclose(rho.rho, sigma(1, 1), atol=1e-14)


def test_paper_drives_upper_population_and_coherence():
    # rho33 = 2 g12 |O32|^2 / A and rho21 = -G32 |O31||O32| / A with A = 262150
    rho = steady_state(PAPER_ATOM, PAPER_DRIVES)
    assert rho.populations[2] == pytest.approx(44100 / 262150, rel=1e-12)
    assert rho.rho21 == pytest.approx(-35 * 35 * 35 / 262150, rel=1e-12)


def test_degenerate_kernel_raises():
    frozen = AtomParams(0, 0, 0, 0, 0, 0, 10.96, 24.15, 50)
    with pytest.raises(DegenerateSteadyState):
        solve_steady(build_liouvillian(frozen, DriveConfig()))


def test_random_steady_states_are_physical(rng):
    for _ in range(200):
        p, d = random_physical_params(rng), random_drives(rng)
        m = build_liouvillian(p, d)
        rho = solve_steady(m)
        assert isinstance(rho, DensityMatrix)
        assert np.max(np.abs(m @ rho.rho.reshape(9))) < 1e-10 * np.linalg.norm(m, np.inf)


def test_evolve_ground_is_stationary():
    m = build_liouvillian(PAPER_ATOM, DriveConfig())
    np.testing.assert_allclose(evolve(m, sigma(1, 1), 3.0).rho, sigma(1, 1), atol=1e-15)


def test_evolve_cascade_decay():
    m = build_liouvillian(PAPER_ATOM, DriveConfig())
    rho = evolve(m, sigma(3, 3), 3.0)  # 3 us >> 1/(2pi * 11 MHz)
    np.testing.assert_allclose(rho.rho, sigma(1, 1), atol=1e-6)


def test_evolve_cascade_matches_closed_form_at_short_time():
    # rho33(t) = exp(-2pi G32 t) for the undriven atom
    m = build_liouvillian(PAPER_ATOM, DriveConfig())
    t = 0.01
    exact = math.exp(-TWO_PI * 35 * t)
    dt = max_step(m)
    err1 = abs(evolve(m, sigma(3, 3), t, dt).populations[2] - exact)
    err2 = abs(evolve(m, sigma(3, 3), t, dt / 2).populations[2] - exact)
    assert err1 < 1e-8
    # fourth-order convergence
    assert 12 < err1 / err2 < 20


def test_evolve_reaches_paper_steady_state():
    m = build_liouvillian(PAPER_ATOM, PAPER_DRIVES)
    rho = evolve(m, np.eye(3) / 3, 10 / PAPER_ATOM.gamma_pop_21)
    np.testing.assert_allclose(rho.rho, solve_steady(m).rho, atol=1e-6)


def test_step_bound_enforced():
    m = build_liouvillian(PAPER_ATOM, PAPER_DRIVES)
    with pytest.raises(StepTooLarge):
        evolve(m, np.eye(3) / 3, 1.0, dt=2 * max_step(m))
    assert max_step(m) == pytest.approx(1 / (50 * 35 * TWO_PI))


def test_oracle_equivalence_sample(rng):
    for _ in range(40):
        p = random_physical_params(rng)
        m = build_liouvillian(p, random_drives(rng))
        t = 20 / min(r for r in p.rates() if r > 0)
        np.testing.assert_allclose(evolve(m, np.eye(3) / 3, t).rho, solve_steady(m).rho, atol=1e-6)


def undriven_spectrum(p):
    """Eigenvalues of the block-triangular undriven generator, enumerated by hand."""
    rates = [0.0, p.gamma_pop_21, p.gamma_pop_31 + p.gamma_pop_32]
    rates += [p.gamma_coh_12] * 2 + [p.gamma_coh_13] * 2 + [p.gamma_coh_23] * 2
    return np.sort(-TWO_PI * np.array(rates))


def test_gap_without_drives():
    report = steady_convergence_report(build_liouvillian(PAPER_ATOM, DriveConfig()))
    np.testing.assert_allclose(np.sort(report.eigenvalues.real), undriven_spectrum(PAPER_ATOM), atol=1e-9)
    assert report.gap == pytest.approx(TWO_PI * 11.0)
    assert report.kernel_dim == 1
    assert report.residual == 0.0


def test_gap_independent_of_gamma32_when_undriven():
    doubled = replace(PAPER_ATOM, gamma_pop_32=70.0)
    report = steady_convergence_report(build_liouvillian(doubled, DriveConfig()))
    np.testing.assert_allclose(np.sort(report.eigenvalues.real), undriven_spectrum(doubled), atol=1e-9)
    assert report.gap == pytest.approx(TWO_PI * 11.0)


def test_gap_positive_with_drives():
    report = steady_convergence_report(build_liouvillian(PAPER_ATOM, PAPER_DRIVES))
    assert report.gap > 0
    assert report.kernel_dim == 1
    assert report.residual < 1e-10


def test_populations_independent_of_phases_without_probe(rng):
    base = steady_state(PAPER_ATOM, PAPER_DRIVES.with_delta(12.0)).populations
    for _ in range(50):
        d = DriveConfig(Rabi(35, rng.uniform(0, 7)), Rabi(35, rng.uniform(0, 7)), detuning_32=-12.0)
        np.testing.assert_allclose(steady_state(PAPER_ATOM, d).populations, base, atol=1e-10)


def test_populations_depend_on_phases_only_through_theta(rng):
    for _ in range(20):
        p = random_physical_params(rng)
        d = random_drives(rng)
        ref = steady_state(p, d).populations
        a, b = rng.uniform(0, 2 * math.pi, size=2)
        shifted = DriveConfig(Rabi(d.rabi_31.mag, d.rabi_31.phase + a),
                              Rabi(d.rabi_32.mag, d.rabi_32.phase + b),
                              Rabi(d.rabi_21.mag, d.rabi_21.phase + a - b),
                              d.detuning_31, d.detuning_32)
        assert shifted.theta == pytest.approx(d.theta)
        np.testing.assert_allclose(steady_state(p, shifted).populations, ref, atol=1e-10)


def test_nonphysical_state_is_reported_not_clipped():
    from deltawave.errors import NonPhysicalResult
    # gamma_23 = Gamma_32/2 with Gamma_21 > 2 Gamma_32 is not a valid Lindblad generator
    p = AtomParams.from_decay(5.0, 11.05, 5.525)
    with pytest.raises(NonPhysicalResult, match="negative eigenvalue"):
        steady_state(p, DriveConfig(Rabi(2.59, 0.0), Rabi(7.5, 0.0)))
