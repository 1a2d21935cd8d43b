#!/usr/bin/env python3
"""Induction-step table for a few opening angles

For each angle: the rational classification, the first singular step and
whether the forced CGO solution tends to zero at every nonsingular step.
Rational multiples of pi hit a determinant zero at a finite step; the
irrational openings should pass all of them.
"""

import math
import sys
import time
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from conductive_corner_lab.config import LabThresholds
from conductive_corner_lab.geometry import Sector
from conductive_corner_lab.specfun import FourierBesselField
from conductive_corner_lab.ucp import singular_angles, ucp_verify

MAX_STEP = 3
ETA = 1.0
GAMMA1 = 4.0

ANGLES = {
    "pi/2": math.pi / 2,
    "pi/3": math.pi / 3,
    "2pi/5": 2 * math.pi / 5,
    "1/sqrt(2) pi": math.pi / math.sqrt(2),
    "1": 1.0,
    "sqrt(2)": math.sqrt(2.0),
}


def main():
    print("=" * 60)
    print(f"Induction steps 0..{MAX_STEP} (eta={ETA}, gamma1={GAMMA1})")
    print("=" * 60)

    print("\nEnumerated singular openings:")
    for ell in range(MAX_STEP + 1):
        print(f"  step {ell}: " + ", ".join(str(z) for z in singular_angles(ell)))

    # coarser angle classification so the table stays readable
    config = LabThresholds(angle_denominator=10_000, tau_max=1024.0)
    coeffs = FourierBesselField.single(math.sqrt(GAMMA1), MAX_STEP + 2, a=1.0, b=1.0)

    print("\n| angle | class | first singular step | forced zero | time |")
    print("|-------|-------|---------------------|-------------|------|")
    for label, beta in ANGLES.items():
        start = time.time()
        report = ucp_verify(Sector.symmetric(beta), ETA, GAMMA1, coeffs, max_step=MAX_STEP, config=config)
        elapsed = time.time() - start
        forced = "".join("Y" if s.forced_zero else ("S" if s.singular else "N") for s in report.steps)
        first = report.first_singular_step
        print(f"| {label} | {report.angle_class} | {'-' if first is None else first} | {forced} | {elapsed:.2f}s |")

    print("\nY = forced solution tends to zero, S = singular step, N = not forced")


if __name__ == "__main__":
    main()
