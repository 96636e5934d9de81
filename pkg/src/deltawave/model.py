"""Domain types, unit conventions and the reference parameter set.

Units
-----
Every rate, Rabi frequency and detuning is a *linear* frequency in MHz,
i.e. the number quoted as ``X/2pi`` for an angular quantity ``X``.
Transition frequencies are in GHz and the line impedance in ohms.  The
factor 2pi is restored in exactly two places: the Liouvillian (time in
microseconds) and the SI conversion in :mod:`deltawave.waveguide`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Mapping

import numpy as np

from .errors import ConfigError, NonPhysicalResult

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = -1e-10

#: Probe is considered weak below this fraction of Gamma_21 (warning tier).
WEAK_PROBE_FRACTION = 1 / 5


@dataclass(frozen=True)
class AtomParams:
    """Relaxation rates (MHz), transition frequencies (GHz) and line impedance."""

    gamma_pop_31: float
    gamma_pop_32: float
    gamma_pop_21: float
    gamma_coh_12: float
    gamma_coh_13: float
    gamma_coh_23: float
    omega_21: float
    omega_32: float
    line_impedance: float = 50.0

    @classmethod
    def from_decay(cls, gamma_pop_32: float, gamma_pop_21: float,
                   gamma_coh_12: float, *, gamma_pop_31: float = 0.0,
                   gamma_coh_13: float | None = None,
                   gamma_coh_23: float | None = None,
                   omega_21: float = 10.96, omega_32: float = 24.15,
                   line_impedance: float = 50.0) -> "AtomParams":
        """Build parameters with the upper-level coherences defaulting to Gamma_32 / 2."""
        half = gamma_pop_32 / 2
        return cls(
            gamma_pop_31=gamma_pop_31,
            gamma_pop_32=gamma_pop_32,
            gamma_pop_21=gamma_pop_21,
            gamma_coh_12=gamma_coh_12,
            gamma_coh_13=half if gamma_coh_13 is None else gamma_coh_13,
            gamma_coh_23=half if gamma_coh_23 is None else gamma_coh_23,
            omega_21=omega_21,
            omega_32=omega_32,
            line_impedance=line_impedance,
        )

    def with_pure_dephasing(self, rate: float) -> "AtomParams":
        """Copy with gamma_coh_12 set so that the 1-2 pure dephasing equals ``rate``."""
        return replace(self, gamma_coh_12=self.gamma_pop_21 / 2 + rate)

    def rates(self) -> tuple[float, ...]:
        return (self.gamma_pop_31, self.gamma_pop_32, self.gamma_pop_21,
                self.gamma_coh_12, self.gamma_coh_13, self.gamma_coh_23)


@dataclass(frozen=True)
class Rabi:
    """Complex Rabi frequency stored as magnitude (MHz) and phase (rad).

    Storing the polar pair rather than a complex number keeps JSON
    round-trips bit-exact.
    """

    mag: float = 0.0
    phase: float = 0.0

    @property
    def value(self) -> complex:
        if self.mag == 0.0:
            return 0j
        return cmath.rect(self.mag, self.phase)

    @classmethod
    def from_complex(cls, z: complex) -> "Rabi":
        return cls(abs(z), cmath.phase(z) if z != 0 else 0.0)


@dataclass(frozen=True)
class DriveConfig:
    """The two strong drives, the optional probe, and their detunings (MHz).

    The probe detuning is not stored: the closed-loop condition
    ``nu_21 = nu_31 - nu_32`` fixes it to ``detuning_31 - detuning_32``.
    """

    rabi_31: Rabi = field(default_factory=Rabi)
    rabi_32: Rabi = field(default_factory=Rabi)
    rabi_21: Rabi = field(default_factory=Rabi)
    detuning_31: float = 0.0
    detuning_32: float = 0.0

    @property
    def detuning_21(self) -> float:
        return self.detuning_31 - self.detuning_32

    @property
    def delta(self) -> float:
        """Detuning of the induced wave, ``-detuning_32`` (meaningful when detuning_31 = 0)."""
        return -self.detuning_32

    @property
    def theta(self) -> float:
        """Gauge-invariant loop phase theta_21 + theta_32 - theta_31."""
        return self.rabi_21.phase + self.rabi_32.phase - self.rabi_31.phase

    @property
    def probe_on(self) -> bool:
        return self.rabi_21.mag != 0.0

    @property
    def resonant(self) -> bool:
        return self.detuning_31 == 0.0 and self.detuning_32 == 0.0

    def with_delta(self, delta: float) -> "DriveConfig":
        """Copy with the 3-1 drive resonant and the induced-wave detuning set to ``delta``."""
        return replace(self, detuning_31=0.0, detuning_32=-delta)

    def with_theta(self, theta: float) -> "DriveConfig":
        """Copy with the probe phase chosen so that the loop phase equals ``theta``."""
        phase = theta - self.rabi_32.phase + self.rabi_31.phase
        return replace(self, rabi_21=Rabi(self.rabi_21.mag, phase))

    def without_probe(self) -> "DriveConfig":
        return replace(self, rabi_21=Rabi())


class DensityMatrix:
    """Validated 3x3 density matrix.

    Construction checks Hermiticity, unit trace and positivity and raises
    :class:`NonPhysicalResult` on failure; nothing is clipped.
    """

    __slots__ = ("_rho",)

    def __init__(self, rho: np.ndarray):
        rho = np.array(rho, dtype=complex)
        if rho.shape != (3, 3):
            raise NonPhysicalResult(f"density matrix must be 3x3, got {rho.shape}")
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > HERMITIAN_TOL:
            raise NonPhysicalResult(f"not Hermitian (max deviation {herm:.3e})")
        tr = np.trace(rho)
        if abs(tr - 1) > TRACE_TOL:
            raise NonPhysicalResult(f"trace {tr.real:.12g} deviates from 1")
        lam = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
        if lam[0] < POSITIVITY_TOL:
            raise NonPhysicalResult(f"negative eigenvalue {lam[0]:.3e}")
        rho.setflags(write=False)
        self._rho = rho

    @property
    def rho(self) -> np.ndarray:
        return self._rho

    def __getitem__(self, idx):
        return self._rho[idx]

    def element(self, i: int, j: int) -> complex:
        """Matrix element rho_ij with 1-based level labels."""
        return complex(self._rho[i - 1, j - 1])

    @property
    def populations(self) -> tuple[float, float, float]:
        d = np.diag(self._rho).real
        return float(d[0]), float(d[1]), float(d[2])

    @property
    def rho21(self) -> complex:
        return self.element(2, 1)

    def __repr__(self) -> str:
        p = ", ".join(f"{x:.6g}" for x in self.populations)
        return f"DensityMatrix(populations=({p}), rho21={self.rho21:.6g})"


# Reference device: Gamma_32/2pi = 35, Gamma_21/2pi = 11, gamma_12/2pi = 18 MHz,
# upper coherences at Gamma_32/2, Gamma_31 unspecified (taken as 0).
PAPER_ATOM = AtomParams(
    gamma_pop_31=0.0,
    gamma_pop_32=35.0,
    gamma_pop_21=11.0,
    gamma_coh_12=18.0,
    gamma_coh_13=17.5,
    gamma_coh_23=17.5,
    omega_21=10.96,
    omega_32=24.15,
    line_impedance=50.0,
)

PAPER_DRIVES = DriveConfig(rabi_31=Rabi(35.0, 0.0), rabi_32=Rabi(35.0, 0.0))


def pure_dephasing(params: AtomParams) -> float:
    """Pure dephasing of the 1-2 coherence, ``gamma_12 - Gamma_21 / 2`` (MHz)."""
    return params.gamma_coh_12 - params.gamma_pop_21 / 2


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(params: AtomParams, drives: DriveConfig | None = None, *,
             analytic: bool = False) -> ValidationReport:
    """Check parameter invariants.

    Parameters
    ----------
    params, drives
        Configuration to check.  ``drives`` may be omitted.
    analytic
        Set when weak-probe closed forms will be evaluated; enables the
        "probe not weak" warning.
    """
    report = ValidationReport()
    for f in fields(AtomParams):
        v = getattr(params, f.name)
        if not isinstance(v, (int, float)) or not math.isfinite(v):
            report.violations.append(f"{f.name} must be a finite number, got {v!r}")
    if report.violations:
        return report
    for name in ("gamma_pop_31", "gamma_pop_32", "gamma_pop_21",
                 "gamma_coh_12", "gamma_coh_13", "gamma_coh_23"):
        if getattr(params, name) < 0:
            report.violations.append(f"negative rate {name}")
    for name in ("omega_21", "omega_32", "line_impedance"):
        if getattr(params, name) <= 0:
            report.violations.append(f"{name} must be positive")
    if pure_dephasing(params) < 0:
        report.violations.append(
            f"negative pure dephasing: gamma_coh_12={params.gamma_coh_12} "
            f"< gamma_pop_21/2={params.gamma_pop_21 / 2}")

    if drives is not None:
        for name in ("rabi_31", "rabi_32", "rabi_21"):
            r = getattr(drives, name)
            if not (math.isfinite(r.mag) and math.isfinite(r.phase)):
                report.violations.append(f"{name} must be finite")
            elif r.mag < 0:
                report.violations.append(f"{name} magnitude must be non-negative")
        for name in ("detuning_31", "detuning_32"):
            if not math.isfinite(getattr(drives, name)):
                report.violations.append(f"{name} must be finite")
        if analytic and drives.rabi_21.mag > WEAK_PROBE_FRACTION * params.gamma_pop_21:
            report.warnings.append(
                f"probe not weak: |rabi_21|={drives.rabi_21.mag} MHz exceeds "
                f"gamma_pop_21/5={params.gamma_pop_21 * WEAK_PROBE_FRACTION:g} MHz")
    return report


# ---------------------------------------------------------------------------
# JSON configuration

_DRIVE_KEYS = ("rabi_31", "rabi_32", "rabi_21", "detuning_31_mhz", "detuning_32_mhz")
_RABI_KEYS = ("mag_mhz", "phase_rad")


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _check_keys(obj: Any, allowed, required, where: str) -> None:
    if not isinstance(obj, Mapping):
        raise ConfigError(f"{where}: expected an object")
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise ConfigError(f"{where}: missing key(s) {', '.join(missing)}")


def atom_to_dict(params: AtomParams) -> dict:
    return asdict(params)


def atom_from_dict(obj: Mapping, where: str = "atom") -> AtomParams:
    names = [f.name for f in fields(AtomParams)]
    _check_keys(obj, names, names, where)
    return AtomParams(**{k: _number(obj[k], f"{where}.{k}") for k in names})


def _rabi_from_dict(obj: Mapping, where: str) -> Rabi:
    _check_keys(obj, _RABI_KEYS, _RABI_KEYS, where)
    return Rabi(_number(obj["mag_mhz"], f"{where}.mag_mhz"),
                _number(obj["phase_rad"], f"{where}.phase_rad"))


def drives_to_dict(drives: DriveConfig) -> dict:
    out: dict[str, Any] = {}
    for name in ("rabi_31", "rabi_32", "rabi_21"):
        r = getattr(drives, name)
        out[name] = {"mag_mhz": r.mag, "phase_rad": r.phase}
    out["detuning_31_mhz"] = drives.detuning_31
    out["detuning_32_mhz"] = drives.detuning_32
    return out


def drives_from_dict(obj: Mapping, where: str = "drives") -> DriveConfig:
    # the probe may be omitted (probe off)
    _check_keys(obj, _DRIVE_KEYS, [k for k in _DRIVE_KEYS if k != "rabi_21"], where)
    probe = _rabi_from_dict(obj["rabi_21"], f"{where}.rabi_21") if "rabi_21" in obj else Rabi()
    return DriveConfig(
        rabi_31=_rabi_from_dict(obj["rabi_31"], f"{where}.rabi_31"),
        rabi_32=_rabi_from_dict(obj["rabi_32"], f"{where}.rabi_32"),
        rabi_21=probe,
        detuning_31=_number(obj["detuning_31_mhz"], f"{where}.detuning_31_mhz"),
        detuning_32=_number(obj["detuning_32_mhz"], f"{where}.detuning_32_mhz"),
    )


def config_to_dict(params: AtomParams, drives: DriveConfig) -> dict:
    return {"atom": atom_to_dict(params), "drives": drives_to_dict(drives)}


def config_from_dict(obj: Any) -> tuple[AtomParams, DriveConfig]:
    """Parse a ``{"atom": ..., "drives": ...}`` object; unknown keys are errors."""
    _check_keys(obj, ("atom", "drives"), ("atom", "drives"), "config")
    return atom_from_dict(obj["atom"]), drives_from_dict(obj["drives"])
