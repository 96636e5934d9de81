"""Closed-form steady-state expressions.

All functions take complex Rabi frequencies through :class:`DriveConfig`
and return dimensionless coherences or factors; MHz in, MHz out.  The
resonant expressions assume ``Gamma_31 = 0`` and
``gamma_13 = gamma_23 = Gamma_32 / 2``; they are evaluated for whatever
parameters are passed, without checking that assumption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import AtomParams, DensityMatrix, DriveConfig, Rabi
from .steady import steady_state


def _require_resonant(drives: DriveConfig, what: str) -> None:
    if not drives.resonant:
        raise DomainError(f"{what} is only defined at the resonant point "
                          f"(detuning_31 = detuning_32 = 0)")


def normalizer(params: AtomParams, drives: DriveConfig) -> float:
    """Resonant normalizer ``A = (6 g12 + G32)|O32|^2 + G32(|O31|^2 + 2 g12 G32)`` (MHz^3)."""
    g12, g32 = params.gamma_coh_12, params.gamma_pop_32
    o31, o32 = drives.rabi_31.mag ** 2, drives.rabi_32.mag ** 2
    return (6 * g12 + g32) * o32 + g32 * (o31 + 2 * g12 * g32)


def coherence_general(params: AtomParams, drives: DriveConfig,
                      rho: DensityMatrix | None = None) -> complex:
    """Steady 1-2 coherence at arbitrary induced-wave detuning.

    Expresses rho21 through the populations.  Since no closed form for
    off-resonant populations is available, they are taken from ``rho``
    (computed numerically when omitted), which makes this an identity
    check rather than an independent prediction.
    """
    if drives.detuning_31 != 0.0:
        raise DomainError("coherence_general requires a resonant 3-1 drive")
    if drives.probe_on:
        raise DomainError("coherence_general requires the probe to be off")
    if rho is None:
        rho = steady_state(params, drives)
    r11, r22, r33 = rho.populations
    o31, o32 = drives.rabi_31.value, drives.rabi_32.value
    delta = drives.delta
    g13 = params.gamma_coh_13
    lam21 = params.gamma_coh_12 - 1j * delta
    lam23 = params.gamma_coh_23 - 1j * delta
    num = o31 * np.conj(o32) * (lam23 * (r33 - r11) + g13 * (r33 - r22))
    den = abs(o31) ** 2 * g13 + lam23 * (abs(o32) ** 2 + 4 * g13 * lam21)
    return complex(num / den)


@dataclass(frozen=True)
class ResonantSummary:
    a_norm: float
    rho11: float
    rho22: float
    rho33: float
    rho21: complex

    @property
    def populations(self) -> tuple[float, float, float]:
        return self.rho11, self.rho22, self.rho33


def resonant_summary(params: AtomParams, drives: DriveConfig) -> ResonantSummary:
    """Populations and coherence at ``Delta = 0`` without probe."""
    _require_resonant(drives, "resonant_summary")
    if drives.probe_on:
        raise DomainError("resonant_summary requires the probe to be off")
    g12, g32 = params.gamma_coh_12, params.gamma_pop_32
    o31sq, o32sq = drives.rabi_31.mag ** 2, drives.rabi_32.mag ** 2
    a = normalizer(params, drives)
    if a == 0:
        raise DomainError("normalizer vanishes (all rates and drives zero)")
    return ResonantSummary(
        a_norm=a,
        rho11=(2 * g12 + g32) * o32sq / a,
        rho22=(2 * g12 * o32sq + g32 * (o31sq + 2 * g12 * g32)) / a,
        rho33=2 * g12 * o32sq / a,
        rho21=complex(-g32 * drives.rabi_31.value * np.conj(drives.rabi_32.value) / a),
    )


def probe_coherence_correction(params: AtomParams, drives: DriveConfig) -> complex:
    """First-order probe response ``B`` such that ``rho'21 = rho21 + Omega21 * B``."""
    _require_resonant(drives, "probe_coherence_correction")
    g12, g32 = params.gamma_coh_12, params.gamma_pop_32
    o31sq, o32sq = drives.rabi_31.mag ** 2, drives.rabi_32.mag ** 2
    a = normalizer(params, drives)
    num = 1j * g32 * (g32 * (o31sq - o32sq) + 2 * g12 * (g32 ** 2 - o32sq))
    return complex(num / (a * (o31sq + o32sq + 2 * g12 * g32)))


def probe_coherence(params: AtomParams, drives: DriveConfig) -> complex:
    """Weak-probe coherence at resonance, ``-G32 O31 O32* / A + O21 B``."""
    base = resonant_summary(params, drives.without_probe()).rho21
    return base + drives.rabi_21.value * probe_coherence_correction(params, drives)


@dataclass(frozen=True)
class Interference:
    """Probe/emission interference on the transmission side.

    ``factor`` is ``sqrt(1 + alpha^2 - 2 alpha sin(theta))``; the total
    current is ``J |Omega21| / Gamma21 * factor``.
    """

    alpha: float
    theta: float
    factor: float


def interference_factor(alpha: float, theta: float) -> float:
    # clamp tiny negative round-off at alpha = 1, theta = pi/2
    return math.sqrt(max(1 + alpha * alpha - 2 * alpha * math.sin(theta), 0.0))


def interference_alpha(params: AtomParams, drives: DriveConfig) -> float:
    if not drives.probe_on:
        raise DomainError("alpha is undefined without a probe")
    return (params.gamma_pop_21 * params.gamma_pop_32 * drives.rabi_31.mag
            * drives.rabi_32.mag / (normalizer(params, drives) * drives.rabi_21.mag))


def interference_intensity(params: AtomParams, drives: DriveConfig) -> Interference:
    """Relative strength ``alpha`` and loop phase ``theta`` of probe vs. induced wave."""
    _require_resonant(drives, "interference_intensity")
    alpha = interference_alpha(params, drives)
    theta = drives.theta
    return Interference(alpha, theta, interference_factor(alpha, theta))


def switch_off_probe(params: AtomParams, drives: DriveConfig) -> float:
    """Probe magnitude (MHz) giving ``alpha = 1`` for the given strong drives."""
    return (params.gamma_pop_21 * params.gamma_pop_32 * drives.rabi_31.mag
            * drives.rabi_32.mag / normalizer(params, drives))


def two_level_probe_transmission(params: AtomParams, rabi_21: Rabi | complex,
                                 delta: float, *, exact: bool = False) -> complex:
    """Probe transmission amplitude of the undriven atom.

    The weak-probe result is ``1 - (Gamma21/2) / (gamma12 - i delta)``.
    With ``exact=True`` the full steady state (including saturation by a
    finite probe) is used instead.
    """
    if not exact:
        return complex(1 - (params.gamma_pop_21 / 2) / (params.gamma_coh_12 - 1j * delta))
    rabi = rabi_21 if isinstance(rabi_21, Rabi) else Rabi.from_complex(rabi_21)
    if rabi.mag == 0:
        raise DomainError("exact transmission needs a nonzero probe")
    drives = DriveConfig(rabi_21=rabi).with_delta(delta)
    rho21 = steady_state(params, drives).rho21
    return 1 + 1j * params.gamma_pop_21 * rho21 / rabi.value
