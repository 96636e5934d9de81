import math

import numpy as np
import pytest

from deltawave.model import AtomParams, DriveConfig, Rabi

ACCEPTANCE_RESULTS = []


def record_acceptance(label, ok, detail):
    ACCEPTANCE_RESULTS.append((label, bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")


def random_physical_params(rng, *, gamma31=True):
    """Rates for which the rate-form dissipator is a proper Lindblad generator.

    Extra dephasing comes from two diagonal jump operators diag(c); independent
    per-pair extras are not completely positive in general.
    """
    g21 = rng.uniform(1, 20)
    g32 = rng.uniform(5, 60)
    g31 = rng.uniform(0, 10) if gamma31 else 0.0
    c = rng.uniform(-4, 4, size=(2, 3))

    def extra(i, j):
        return float(np.sum((c[:, i] - c[:, j]) ** 2) / 2)

    return AtomParams(
        gamma_pop_31=g31,
        gamma_pop_32=g32,
        gamma_pop_21=g21,
        gamma_coh_12=g21 / 2 + extra(0, 1),
        gamma_coh_13=(g31 + g32) / 2 + extra(0, 2),
        gamma_coh_23=(g31 + g32 + g21) / 2 + extra(1, 2),
        omega_21=rng.uniform(1, 20),
        omega_32=rng.uniform(1, 30),
        line_impedance=rng.uniform(10, 100),
    )


def random_resonant_params(rng):
    """Rates obeying the closed-form assumptions: Gamma_31 = 0, gamma_13 = gamma_23 = Gamma_32/2.

    gamma_23 = Gamma_32/2 undercuts the Lindblad bound (Gamma_32 + Gamma_21)/2,
    so Gamma_21 is kept below Gamma_32 where the steady state stays positive.
    """
    g32 = rng.uniform(5, 60)
    g21 = rng.uniform(1, min(20, g32))
    return AtomParams.from_decay(g32, g21, g21 / 2 + rng.uniform(0, 30))


def random_rabi(rng, lo=0.0, hi=80.0):
    return Rabi(rng.uniform(lo, hi), rng.uniform(0, 2 * math.pi))


def random_drives(rng, *, probe=True, detuned=True):
    return DriveConfig(
        rabi_31=random_rabi(rng),
        rabi_32=random_rabi(rng),
        rabi_21=random_rabi(rng, 0, 10) if probe else Rabi(),
        detuning_31=rng.uniform(-50, 50) if detuned else 0.0,
        detuning_32=rng.uniform(-50, 50) if detuned else 0.0,
    )


def random_hermitian_state(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
