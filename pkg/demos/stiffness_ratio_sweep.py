#!/usr/bin/env python3
"""Sweep the frequency ratio and tabulate cooling depth vs the ideal floor.

Uses the sweep machinery (the same code path as `molcool sweep`) rather
than looping over run_cycle by hand, and writes sweep.csv plus a plot
script for a quick look.
"""

import os
import sys

from molcool import (
    SweepSpec,
    default_cycle_config,
    emit_plot_script,
    emit_sweep_csv,
    ideal_cooling_limit,
    run_sweep,
)


def main() -> None:
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "ratio_sweep_out"
    values = (1.25, 1.5, 2.0, 2.5, 3.0, 4.0)
    spec = SweepSpec(axis="freq_ratio_r", values=values, base=default_cycle_config())
    rows = run_sweep(spec)

    print(f"{'r':>6} {'min T_ratio':>13} {'ideal 1/r':>11} {'recovery s':>11}")
    for row in rows:
        floor = ideal_cooling_limit(row.axis_value)
        print(
            f"{row.axis_value:>6g} {row.min_t_ratio:>13.6f} {floor:>11.6f} "
            f"{row.recovery_s:>11.4f}"
        )

    os.makedirs(out_dir, exist_ok=True)
    emit_sweep_csv(rows, os.path.join(out_dir, "sweep.csv"))
    emit_plot_script(rows, os.path.join(out_dir, "sweep_plot.py"), axis="freq_ratio_r")
    print(f"wrote {out_dir}/sweep.csv and {out_dir}/sweep_plot.py")


if __name__ == "__main__":
    main()
