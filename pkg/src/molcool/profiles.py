"""Control schedules for the cavity frequency.

Frequencies are expressed as omega/omega1 (closed-configuration units)
and times as s = t/tau_open.  Every shape holds its final value past its
duration, so profiles compose cleanly into multi-segment cycles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class ProfileShape(Enum):
    SINE_OPENING = "sine-opening"
    CONSTANT = "constant"
    PIECEWISE_LINEAR = "piecewise-linear"
    REVERSED_SINE_CLOSING = "reversed-sine-closing"


@dataclass(frozen=True)
class FrequencyProfile:
    """One control segment for omega(s)/omega1.

    `level` applies to CONSTANT only; `breakpoints` ((s, omega/omega1)
    pairs, s ascending from 0) to PIECEWISE_LINEAR only.  The sine shapes
    run between the closed value 1 and the open value 1/r over `duration`.
    """

    freq_ratio_r: float
    shape: ProfileShape = ProfileShape.SINE_OPENING
    duration: float = 1.0
    level: float = 1.0
    breakpoints: tuple[tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not (math.isfinite(self.freq_ratio_r) and self.freq_ratio_r >= 1.0):
            raise ValueError(f"freq_ratio_r must be >= 1, got {self.freq_ratio_r}")
        if not (math.isfinite(self.duration) and self.duration > 0.0):
            raise ValueError(f"duration must be positive, got {self.duration}")
        if self.shape is ProfileShape.CONSTANT:
            if not (math.isfinite(self.level) and self.level > 0.0):
                raise ValueError(f"constant profile needs a positive level, got {self.level}")
        if self.shape is ProfileShape.PIECEWISE_LINEAR:
            pts = self.breakpoints
            if len(pts) < 2:
                raise ValueError("piecewise-linear profile needs at least two breakpoints")
            ss = [p[0] for p in pts]
            ws = [p[1] for p in pts]
            if any(not (math.isfinite(a) and math.isfinite(w)) for a, w in pts):
                raise ValueError("breakpoints must be finite")
            if any(b <= a for a, b in zip(ss, ss[1:])):
                raise ValueError("breakpoint times must be strictly increasing")
            if ss[0] != 0.0:
                raise ValueError("first breakpoint must be at s = 0")
            if any(w <= 0.0 for w in ws):
                raise ValueError("breakpoint frequencies must be positive")


def omega_at(profile: FrequencyProfile, s):
    """omega(s)/omega1 for scalar or array s >= 0 (profile-local time)."""
    s_arr = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(s_arr)) or np.any(s_arr < 0.0):
        raise ValueError("s must be >= 0 and finite")
    r = profile.freq_ratio_r
    if profile.shape is ProfileShape.SINE_OPENING:
        x = np.clip(s_arr / profile.duration, 0.0, 1.0)
        w = 1.0 + (1.0 / r - 1.0) * np.sin(0.5 * math.pi * x)
    elif profile.shape is ProfileShape.REVERSED_SINE_CLOSING:
        x = np.clip(s_arr / profile.duration, 0.0, 1.0)
        w = 1.0 + (1.0 / r - 1.0) * np.sin(0.5 * math.pi * (1.0 - x))
    elif profile.shape is ProfileShape.CONSTANT:
        w = np.full_like(s_arr, profile.level)
    else:
        xs = np.array([p[0] for p in profile.breakpoints])
        ws = np.array([p[1] for p in profile.breakpoints])
        w = np.interp(s_arr, xs, ws)
    if np.ndim(s) == 0:
        return float(w)
    return w


def _omega_scalar(profile: FrequencyProfile, s: float) -> float:
    # math-only fast path for quadrature integrands
    r = profile.freq_ratio_r
    if profile.shape is ProfileShape.SINE_OPENING:
        x = min(s / profile.duration, 1.0)
        return 1.0 + (1.0 / r - 1.0) * math.sin(0.5 * math.pi * x)
    if profile.shape is ProfileShape.REVERSED_SINE_CLOSING:
        x = min(s / profile.duration, 1.0)
        return 1.0 + (1.0 / r - 1.0) * math.sin(0.5 * math.pi * (1.0 - x))
    if profile.shape is ProfileShape.CONSTANT:
        return profile.level
    return float(omega_at(profile, s))
