#!/usr/bin/env python3
"""Map the dimensionless working point onto laboratory scales and back.

Forward direction: pick theta0, r, gamma*tau and a bath temperature,
and recover oscillation periods, angular frequencies, and (with a mass
scale) spring constants.  Reverse direction: start from mechanical
parameters of the two-body model and reduce them to the dimensionless
triple that the solvers consume.
"""

from molcool import (
    DimensionlessParams,
    PhysicalParams,
    reduce_to_relative_mode,
    si_roundtrip,
    to_dimensionless,
)


def main() -> None:
    d = DimensionlessParams(theta0=0.032, freq_ratio_r=2.0, gamma_tau_g=1.0)
    si = si_roundtrip(d, temperature=300.0, mass=2.5e-26, tau_open=5e-11)
    print("dimensionless -> SI at T = 300 K")
    print(f"  omega0 = {si.omega0:.6e} rad/s  (open configuration)")
    print(f"  omega1 = {si.omega1:.6e} rad/s  (closed configuration)")
    print(f"  tau_osc = {si.tau_osc:.6e} s, tau_osc' = {si.tau_osc_prime:.6e} s")
    print(f"  gamma = {si.gamma:.6e} 1/s")
    p = si.physical
    print(f"  per-arm mass {p.mass:.3e} kg -> spring {p.spring:.6e} N/m, "
          f"peak coupling {p.coupling_max:.6e} N/m")

    print()
    print("SI -> dimensionless for the same mechanical model")
    back = to_dimensionless(p)
    print(f"  theta0 = {back.theta0:.12g}")
    print(f"  freq_ratio_r = {back.freq_ratio_r:.12g}")
    print(f"  gamma_tau_g = {back.gamma_tau_g:.12g}")

    modes = reduce_to_relative_mode(p)
    print(f"  normal-mode split: M = {modes.total_mass:.3e} kg, mu = "
          f"{modes.reduced_mass:.3e} kg, kappa_cm = {modes.kappa_cm:.6e} N/m, "
          f"kappa_rel = {modes.kappa_rel:.6e} N/m")


if __name__ == "__main__":
    main()
