"""Transmission-line observables.

The atom sits at x = 0 and radiates symmetrically; the probe travels in
+x.  Only the two directional complex amplitudes are represented, no
spatial grid.  Currents are in amperes unless a name says otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .model import AtomParams, DriveConfig

HBAR = 1.054571817e-34  # J s
TWO_PI = 2 * math.pi
MHZ = 1e6
GHZ = 1e9
NANOAMP = 1e-9


def j_scale(params: AtomParams) -> float:
    """Current scale ``J = sqrt(hbar omega21 Gamma21 / Z)`` in amperes."""
    omega = TWO_PI * params.omega_21 * GHZ
    gamma = TWO_PI * params.gamma_pop_21 * MHZ
    return math.sqrt(HBAR * omega * gamma / params.line_impedance)


def emission_amplitude(params: AtomParams, rho21: complex) -> complex:
    """Induced current amplitude ``i J rho21`` emitted into both directions."""
    return 1j * j_scale(params) * complex(rho21)


def saturated_emission(params: AtomParams) -> float:
    """Large-drive limit ``J G32 / (6 g12 + 2 G32)`` of |I_g| for |O31| = |O32|."""
    g32 = params.gamma_pop_32
    return j_scale(params) * g32 / (6 * params.gamma_coh_12 + 2 * g32)


@dataclass(frozen=True)
class FieldAmplitudes:
    """Complex line currents around the atom (amperes).

    ``t`` is None when the probe is off.
    """

    j_scale: float
    i_generated: complex
    i_probe: complex
    i_total_right: complex
    i_total_left_reflected: complex
    t: complex | None

    @property
    def r(self) -> complex | None:
        """Reflection coefficient, reflected over incident amplitude."""
        if self.t is None:
            return None
        return self.i_total_left_reflected / self.i_probe

    @property
    def transmission_power(self) -> float | None:
        return None if self.t is None else abs(self.t) ** 2


def transmission(params: AtomParams, rabi_21: complex, rho21_prime: complex) -> complex:
    """Dimensionless ``t = 1 + i Gamma21 rho'21 / Omega21``."""
    if rabi_21 == 0:
        raise DomainError("transmission coefficient undefined without probe")
    return 1 + 1j * params.gamma_pop_21 * complex(rho21_prime) / complex(rabi_21)


def total_current_scaled(params: AtomParams, rabi_21: complex, rho21_prime: complex) -> float:
    """|I_t| via ``J |Omega21/Gamma21 + i rho'21|`` (amperes)."""
    return j_scale(params) * abs(complex(rabi_21) / params.gamma_pop_21 + 1j * complex(rho21_prime))


def total_field(params: AtomParams, drives: DriveConfig, rho21_prime: complex,
                *, need_t: bool = False) -> FieldAmplitudes:
    """Superpose the incident probe and the induced wave.

    Parameters
    ----------
    rho21_prime
        Steady 1-2 coherence with the probe applied, either numeric or
        from the weak-probe closed form.
    need_t
        Raise :class:`DomainError` instead of returning ``t=None`` when
        the probe is off.
    """
    j = j_scale(params)
    omega21 = drives.rabi_21.value
    i_gen = 1j * j * complex(rho21_prime)
    i_probe = j * omega21 / params.gamma_pop_21
    if omega21 == 0:
        if need_t:
            raise DomainError("transmission coefficient undefined without probe")
        t = None
    else:
        t = transmission(params, omega21, rho21_prime)
    return FieldAmplitudes(
        j_scale=j,
        i_generated=i_gen,
        i_probe=i_probe,
        i_total_right=i_probe + i_gen,
        i_total_left_reflected=i_gen,
        t=t,
    )
