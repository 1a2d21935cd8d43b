#!/usr/bin/env python3
"""Invisibility sweep over the bundled presets

Far-field norms of each preset over a small wavenumber grid. The disk
presets use the modal oracle and run in seconds; polygonal presets go
through the finite-element solver and are skipped unless --fem is given.
"""

import argparse
import sys
import time
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from conductive_corner_lab import CheckStatus, DiskScatterer, load_preset
from conductive_corner_lab.experiments import INVISIBILITY_NOTE, SolverSettings, invisibility_scan

K_GRID = [0.5, 1.0, 2.0, 4.0]

SCATTERERS = {
    "disk": lambda: load_preset("disk"),
    "empty_disk": lambda: DiskScatterer((0.5,), (1.0,), (0.0,)),
    "irrational_triangle": lambda: load_preset("irrational_triangle"),
    "empty_square": lambda: load_preset("empty_square"),
    "two_cell_square": lambda: load_preset("two_cell_square"),
}


def run_sweep(name, scatterer, settings, output):
    print(f"\n--- {name} ---")
    start = time.time()
    report = invisibility_scan(scatterer, K_GRID, settings=settings)
    elapsed = time.time() - start

    for point in report.points:
        mark = "!" if point.status == CheckStatus.FAIL else " "
        print(f"{mark} k={point.parameter:5.2f}  ||u_inf||={point.metric:.3e}  {point.status.value}")
    print(f"Time: {elapsed:.2f}s")

    if output:
        report.to_csv(output / f"{name}.csv")
        report.to_json(output / f"{name}.json")
    return report


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--fem", action="store_true", help="include the polygonal presets")
    parser.add_argument("--ppw", type=float, default=12.0, help="points per wavelength for FEM runs")
    parser.add_argument("-o", "--output", type=Path, help="directory for CSV/JSON reports")
    args = parser.parse_args()

    print("=" * 60)
    print("Invisibility sweep")
    print("=" * 60)
    print(INVISIBILITY_NOTE)

    settings = SolverSettings(points_per_wavelength=args.ppw, directions=128)
    reports = {}
    for name, build in SCATTERERS.items():
        scatterer = build()
        if not isinstance(scatterer, DiskScatterer) and not args.fem:
            print(f"\n--- {name} --- skipped (pass --fem)")
            continue
        reports[name] = run_sweep(name, scatterer, settings, args.output)

    print("\n| scatterer | min ||u_inf|| | flagged k | errors |")
    print("|-----------|---------------|-----------|--------|")
    for name, report in reports.items():
        flagged = ", ".join(f"{p.parameter:g}" for p in report.flagged) or "-"
        print(f"| {name} | {report.min_metric:.3e} | {flagged} | {len(report.failures)} |")


if __name__ == "__main__":
    main()
