"""Mean-excitation dynamics of the cavity mode against the thermal bath.

In the slow-sweep regime the full state stays of quenched Boltzmann form
and the only dynamical quantity is eta(s) = <n>(s) + 1, obeying the
linear relaxation law (s = t/tau_open, g = gamma*tau_open)

    d(eta)/ds = -g*eta + g*(nu(theta(s)) + 1).

Two independent routes integrate it: a fixed-step explicit 4th-order
stepper (`evolve_eta_ode`) and the exact exponential-kernel solution
evaluated by adaptive quadrature (`evolve_eta_closed_form`).  The cycle
engine cross-checks one against the other on every run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SolverError
from .profiles import FrequencyProfile, _omega_scalar, omega_at
from .quadrature import integrate_adaptive_simpson
from .thermo import nu_of, ratio_from_eta
from .units import DimensionlessParams

_MIN_STEP = 1e-12
_NU_UNDERFLOW_THETA = 700.0


@dataclass(eq=False)
class EtaTrajectory:
    """Sampled eta dynamics, derived observables, and solver metadata."""

    s: np.ndarray
    omega_over_omega1: np.ndarray
    eta: np.ndarray
    mean_n: np.ndarray
    T_ratio: np.ndarray
    method: str
    step_size: float | None = None
    tolerance: float | None = None


@dataclass(frozen=True)
class RecoveryResult:
    """Outcome of a recovery-time search; `s` is None when not recovered."""

    recovered: bool
    s: float | None
    horizon: float


def _check_run(d: DimensionlessParams, profile: FrequencyProfile, horizon, samples_per_unit):
    if profile.freq_ratio_r != d.freq_ratio_r:
        raise ValueError(
            f"profile frequency ratio {profile.freq_ratio_r} does not match "
            f"the dimensionless parameters ({d.freq_ratio_r})"
        )
    if not (math.isfinite(horizon) and horizon > 0.0):
        raise ValueError(f"horizon must be positive, got {horizon}")
    n_intervals = int(round(horizon * samples_per_unit))
    if n_intervals < 1:
        raise ValueError("horizon shorter than one sample interval")
    return n_intervals


def _default_eta0(d: DimensionlessParams) -> float:
    # thermalized at the closed frequency, theta = theta0 * r
    return nu_of(d.theta0 * d.freq_ratio_r) + 1.0


def _check_eta0(eta0: float) -> float:
    if not (math.isfinite(eta0) and eta0 > 1.0):
        raise ValueError(f"eta0 must exceed 1 (the ground-state limit), got {eta0}")
    return float(eta0)


def _finish(d, profile, s, eta, method, step_size=None, tolerance=None) -> EtaTrajectory:
    w = omega_at(profile, s)
    theta = d.theta0 * d.freq_ratio_r * w
    return EtaTrajectory(
        s=s,
        omega_over_omega1=w,
        eta=eta,
        mean_n=eta - 1.0,
        T_ratio=ratio_from_eta(eta, theta),
        method=method,
        step_size=step_size,
        tolerance=tolerance,
    )


def evolve_eta_ode(
    d: DimensionlessParams,
    profile: FrequencyProfile,
    eta0: float | None = None,
    horizon: float = 10.0,
    *,
    step_size: float = 1e-4,
    samples_per_unit: int = 2000,
) -> EtaTrajectory:
    """Fixed-step explicit 4th-order integration of the eta relaxation law.

    `step_size` is an upper bound on the substep: every inter-sample
    interval is split into equally many equal substeps, so sample times
    are hit exactly and halving the step exactly doubles the substep
    count.  Output sampling (`samples_per_unit` per tau_open) is
    decoupled from the integration step.
    """
    n_intervals = _check_run(d, profile, horizon, samples_per_unit)
    if not (math.isfinite(step_size) and step_size >= _MIN_STEP):
        raise SolverError(
            f"step-size underflow: step {step_size} below the smallest usable step {_MIN_STEP}"
        )
    eta0 = _default_eta0(d) if eta0 is None else _check_eta0(eta0)
    g = d.gamma_tau_g
    m = max(1, math.ceil(horizon / n_intervals / step_size - 1e-9))
    n_sub = m * n_intervals
    if 2 * n_sub + 1 > 200_000_000:
        raise SolverError("step-size underflow: substep grid would exceed memory limits")
    # stage grid holds every substep edge and midpoint
    ts = np.linspace(0.0, horizon, 2 * n_sub + 1)
    forcing = g * (nu_of(d.theta0 * d.freq_ratio_r * omega_at(profile, ts)) + 1.0)
    u = forcing.tolist()
    h = horizon / n_sub
    h2 = 0.5 * h
    h6 = h / 6.0
    out = np.empty(n_intervals + 1)
    out[0] = eta = float(eta0)
    idx = 0
    for k in range(n_sub):
        i2 = 2 * k
        u0 = u[i2]
        um = u[i2 + 1]
        u1 = u[i2 + 2]
        k1 = u0 - g * eta
        k2 = um - g * (eta + h2 * k1)
        k3 = um - g * (eta + h2 * k2)
        k4 = u1 - g * (eta + h * k3)
        eta += h6 * (k1 + 2.0 * (k2 + k3) + k4)
        if not eta > 1.0:
            raise SolverError(
                f"model violation: eta reached {eta} at s = {ts[i2 + 2]:.6g} "
                "(at or below the ground-state limit)"
            )
        if (k + 1) % m == 0:
            idx += 1
            out[idx] = eta
    return _finish(d, profile, ts[:: 2 * m], out, "rk4-fixed", step_size=h)


def evolve_eta_closed_form(
    d: DimensionlessParams,
    profile: FrequencyProfile,
    eta0: float | None = None,
    horizon: float = 10.0,
    *,
    tol: float = 1e-12,
    max_depth: int = 40,
    samples_per_unit: int = 2000,
) -> EtaTrajectory:
    """Exact exponential-kernel solution of the eta relaxation law.

    Sample to sample the linear law propagates exactly as

        eta(s + D) = exp(-g D) eta(s)
                     + integral over [0, D] of g exp(-g (D - v)) (nu(theta(s + v)) + 1) dv,

    and each interval integral is evaluated by adaptive Simpson to
    absolute tolerance `tol`.  No finite-difference stepping is involved,
    which makes this route the authoritative one in cross-checks.
    """
    n_intervals = _check_run(d, profile, horizon, samples_per_unit)
    eta0 = _default_eta0(d) if eta0 is None else _check_eta0(eta0)
    g = d.gamma_tau_g
    t0r = d.theta0 * d.freq_ratio_r
    samples = np.linspace(0.0, horizon, n_intervals + 1)
    out = np.empty(n_intervals + 1)
    out[0] = eta = float(eta0)
    for k in range(n_intervals):
        a = samples[k]
        width = samples[k + 1] - a

        def integrand(v, _a=a, _w=width):
            th = t0r * _omega_scalar(profile, _a + v)
            occ = 1.0 / math.expm1(th) if th <= _NU_UNDERFLOW_THETA else 0.0
            return g * math.exp(g * (v - _w)) * (occ + 1.0)

        value, _ = integrate_adaptive_simpson(integrand, 0.0, width, tol=tol, max_depth=max_depth)
        eta = math.exp(-g * width) * eta + value
        if not eta > 1.0:
            raise SolverError(
                f"model violation: eta reached {eta} at s = {samples[k + 1]:.6g} "
                "(at or below the ground-state limit)"
            )
        out[k + 1] = eta
    return _finish(d, profile, samples, out, "closed-form", tolerance=tol)


def recovery_time(traj, target: float = 0.997) -> RecoveryResult:
    """First s at or after the T_ratio minimum where T_ratio >= target.

    Works on any object with `s` and `T_ratio` sample arrays (solver
    trajectories and emitted records alike).  The sub-sample crossing is
    located by bisection on the piecewise-linear interpolant between the
    bracketing samples.  When the trajectory never crosses the target the
    result carries `recovered=False` and the horizon that was searched.
    """
    s = np.asarray(traj.s, dtype=float)
    ratio = np.asarray(traj.T_ratio, dtype=float)
    if s.size < 2:
        raise ValueError("trajectory needs at least two samples")
    if not (math.isfinite(target) and target > 0.0):
        raise ValueError(f"target must be positive, got {target}")
    horizon = float(s[-1])
    i_min = int(np.argmin(ratio))
    if ratio[i_min] >= target:
        # target at or below the minimum: the crossing is the minimum itself
        return RecoveryResult(True, float(s[i_min]), horizon)
    above = np.nonzero(ratio[i_min:] >= target)[0]
    if above.size == 0:
        return RecoveryResult(False, None, horizon)
    j = i_min + int(above[0])
    lo, hi = float(s[j - 1]), float(s[j])
    for _ in range(200):
        if hi - lo <= 1e-12 * max(1.0, abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if float(np.interp(mid, s, ratio)) >= target:
            hi = mid
        else:
            lo = mid
    return RecoveryResult(True, hi, horizon)
