"""Adaptive Simpson quadrature with Richardson extrapolation."""

from __future__ import annotations

import math


class QuadratureError(RuntimeError):
    """Adaptive refinement hit its depth limit with the error still too large."""


def integrate_adaptive_simpson(f, a, b, tol=1e-12, max_depth=40):
    """Integrate f over [a, b] to absolute tolerance tol.

    Bisecting Simpson rule: a subinterval is accepted once the Richardson
    error estimate |S_fine - S_coarse|/15 falls under its share of the
    tolerance, and the extrapolated value S_fine + (S_fine - S_coarse)/15
    is accumulated.

    Returns
    -------
    (value, error_estimate) : tuple of float
        The integral and the accumulated local error estimates.

    Raises
    ------
    QuadratureError
        If some subinterval still exceeds its tolerance share at
        max_depth; the message carries the offending interval.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integration limits must be finite")
    if b < a:
        raise ValueError(f"inverted integration interval [{a}, {b}]")
    if a == b:
        return 0.0, 0.0
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _refine(f, a, fa, m, fm, b, fb, whole, tol, 0, max_depth)


def _refine(f, a, fa, m, fm, b, fb, whole, tol, depth, max_depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = (left + right) - whole
    # lm == a or rm == m means the interval is below float resolution
    if abs(delta) <= 15.0 * tol or lm <= a or rm >= b:
        return left + right + delta / 15.0, abs(delta) / 15.0
    if depth >= max_depth:
        raise QuadratureError(
            f"adaptive Simpson did not converge on [{a!r}, {b!r}] at depth {depth}: "
            f"local error estimate {abs(delta) / 15.0:.3e} > tolerance {tol:.3e}"
        )
    lv, le = _refine(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1, max_depth)
    rv, re = _refine(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1, max_depth)
    return lv + rv, le + re
