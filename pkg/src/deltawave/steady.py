"""Stationary states of the master equation.

Two independent routes are provided: a constrained dense linear solve
(:func:`solve_steady`) and explicit fixed-step RK4 time integration
(:func:`evolve`), which serves as the oracle for the former.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSteadyState, NonPhysicalResult, StepTooLarge
from .liouvillian import DIAG_INDICES, TWO_PI, build_liouvillian, unvec, vec
from .model import AtomParams, DensityMatrix, DriveConfig

log = logging.getLogger(__name__)

#: Row of the generator replaced by the trace constraint (the rho33 row).
TRACE_ROW = DIAG_INDICES[2]
RESIDUAL_TOL = 1e-10
SINGULAR_TOL = 1e-12
#: Safety factor in the RK4 step bound dt <= 1 / (STEP_FACTOR * max_rate * 2pi).
STEP_FACTOR = 50
TRACE_DRIFT_TOL = 1e-8
HERMITIAN_DRIFT_TOL = 1e-8


def _constrained_system(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.array(m, dtype=complex)
    a[TRACE_ROW, :] = 0.0
    a[TRACE_ROW, list(DIAG_INDICES)] = 1.0
    b = np.zeros(a.shape[0], dtype=complex)
    b[TRACE_ROW] = 1.0
    return a, b


def solve_steady(m: np.ndarray) -> DensityMatrix:
    """Stationary state of the generator ``m``.

    The rho33 row of ``m @ vec(rho) = 0`` is redundant (the generator is
    trace preserving), so it is replaced by ``Tr rho = 1`` and the 9x9
    system is solved by pivoted LU.

    Raises
    ------
    DegenerateSteadyState
        If the constrained system is singular (kernel of ``m`` is not
        one-dimensional) or the residual check fails.
    NonPhysicalResult
        If the solution is not a valid density matrix.
    """
    m = np.asarray(m, dtype=complex)
    a, b = _constrained_system(m)
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= SINGULAR_TOL * s[0]:
        raise DegenerateSteadyState(
            f"constrained system is singular (sigma_min/sigma_max = {s[-1] / s[0]:.3e}); "
            "steady state is not unique")
    x = np.linalg.solve(a, b)
    norm = np.linalg.norm(m, np.inf)
    resid = np.linalg.norm(m @ x, np.inf)
    if resid >= RESIDUAL_TOL * max(norm, 1.0):
        raise DegenerateSteadyState(f"steady-state residual {resid:.3e} too large")
    return DensityMatrix(unvec(x))


def steady_state(params: AtomParams, drives: DriveConfig) -> DensityMatrix:
    """Convenience wrapper: build the Liouvillian and solve for its kernel."""
    return solve_steady(build_liouvillian(params, drives))


def max_rate(m: np.ndarray) -> float:
    """Largest rate or frequency appearing in the generator, in MHz."""
    return float(np.max(np.abs(m))) / TWO_PI


def max_step(m: np.ndarray) -> float:
    """Largest RK4 step (us) allowed for generator ``m``."""
    rate = max_rate(m)
    return math.inf if rate == 0 else 1.0 / (STEP_FACTOR * rate * TWO_PI)


def rk4_propagator(m: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step for the linear system ``x' = m x``.

    For a constant linear generator the four stages collapse into the
    truncated exponential series below.
    """
    hm = dt * np.asarray(m, dtype=complex)
    eye = np.eye(hm.shape[0], dtype=complex)
    hm2 = hm @ hm
    hm3 = hm2 @ hm
    return eye + hm + hm2 / 2 + hm3 / 6 + hm3 @ hm / 24


def evolve(m: np.ndarray, rho0, t_final: float, dt: float | None = None) -> DensityMatrix:
    """Integrate the master equation from ``rho0`` up to ``t_final`` microseconds.

    ``dt`` defaults to the stability bound; the number of steps is rounded
    up so that the final step lands exactly on ``t_final``.
    """
    m = np.asarray(m, dtype=complex)
    bound = max_step(m)
    if dt is None:
        dt = bound
    if dt <= 0:
        raise StepTooLarge(f"step must be positive, got {dt}")
    if dt > bound:
        raise StepTooLarge(f"dt={dt:.3e} us exceeds the stability bound {bound:.3e} us")
    if t_final < 0:
        raise ValueError("t_final must be non-negative")

    rho0 = rho0.rho if isinstance(rho0, DensityMatrix) else np.asarray(rho0, dtype=complex)
    x = vec(rho0).copy()
    if t_final == 0:
        return DensityMatrix(unvec(x))
    n = math.ceil(t_final / dt) if math.isfinite(dt) else 1
    # n identical steps of a constant linear map: apply P^n by binary powering
    # (P^(2^k) squared up) instead of n separate matvecs.
    prop = rk4_propagator(m, t_final / n)
    tr0 = x[list(DIAG_INDICES)].sum()
    diag = list(DIAG_INDICES)
    while n:
        if n & 1:
            x = prop @ x
            drift = abs(x[diag].sum() - tr0)
            if drift > TRACE_DRIFT_TOL:
                raise NonPhysicalResult(f"trace drift {drift:.3e} during integration")
        n >>= 1
        if n:
            prop = prop @ prop
            # a trace-preserving propagator has unit column sums over the diagonal rows
            leak = np.max(np.abs(prop[diag, :].sum(axis=0) - vec(np.eye(3))))
            if leak > TRACE_DRIFT_TOL:
                raise NonPhysicalResult(f"trace drift {leak:.3e} in propagator")
    rho = unvec(x)
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > HERMITIAN_DRIFT_TOL:
        raise NonPhysicalResult(f"Hermiticity lost during integration ({herm:.3e})")
    # strip accumulated round-off (already bounded by the drift checks above);
    # the exact flow is Hermiticity and trace preserving
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(rho / np.trace(rho).real * tr0.real)


@dataclass(frozen=True)
class ConvergenceReport:
    """Spectral diagnostics of a generator.

    ``gap`` is the smallest nonzero ``|Re lambda|`` in rad/us; ``gap_mhz``
    is the same in MHz.
    """

    gap: float
    eigenvalues: np.ndarray
    residual: float
    kernel_dim: int

    @property
    def gap_mhz(self) -> float:
        return self.gap / TWO_PI

    @property
    def mixing_time(self) -> float:
        """1/gap in microseconds."""
        return math.inf if self.gap == 0 else 1.0 / self.gap


def steady_convergence_report(m: np.ndarray, *, slow_gap_mhz: float = 1e-3) -> ConvergenceReport:
    """Spectral gap and steady-state residual; logs a warning on slow mixing."""
    m = np.asarray(m, dtype=complex)
    lam = np.linalg.eigvals(m)
    scale = max(np.max(np.abs(lam)), 1.0)
    zero = np.abs(lam) <= 1e-9 * scale
    kernel_dim = int(zero.sum())
    nonzero = np.abs(lam.real[~zero])
    nonzero = nonzero[nonzero > 1e-9 * scale]
    gap = float(nonzero.min()) if nonzero.size else 0.0
    try:
        rho = solve_steady(m)
        residual = float(np.linalg.norm(m @ vec(rho.rho), np.inf))
    except (DegenerateSteadyState, NonPhysicalResult):
        residual = math.nan
    if gap / TWO_PI < slow_gap_mhz:
        log.warning("slow mixing: spectral gap %.3e MHz", gap / TWO_PI)
    order = np.lexsort((lam.imag, lam.real))
    return ConvergenceReport(gap=gap, eigenvalues=lam[order], residual=residual,
                             kernel_dim=kernel_dim)
