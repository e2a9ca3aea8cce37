"""Grid search over (omega_max, force_max) for the built-in rule table.

Prints, for each cell, the worst settling time over the six default scenarios
and both presets ('.' = some run failed to settle or fell). theta_max is held
fixed because it doubles as the fall threshold.

    python scripts/scaler_sweep.py
    python scripts/scaler_sweep.py --omega 0.4 0.7 0.05 --force 36 60 2
"""

import argparse
import logging
from dataclasses import replace

import numpy as np

from parafuzz.controller import PRESETS
from parafuzz.harness import DEFAULT_SCENARIOS, run_closed_loop
from parafuzz.plant import PlantParams, Scaler


def worst_settling(scaler: Scaler, plant: PlantParams, duration: float) -> float | None:
    worst = 0.0
    for name in ("conventional", "parabolic"):
        spec = replace(PRESETS[name], scaler=scaler)
        for theta0, omega0 in DEFAULT_SCENARIOS:
            _, m = run_closed_loop(spec, plant, theta0, omega0, duration)
            if not m.settled:
                return None
            worst = max(worst, m.settling_time)
    return worst


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--theta-max", type=float, default=0.35)
    parser.add_argument("--omega", type=float, nargs=3, default=(0.35, 0.75, 0.05),
                        metavar=("START", "STOP", "STEP"))
    parser.add_argument("--force", type=float, nargs=3, default=(20, 70, 4),
                        metavar=("START", "STOP", "STEP"))
    parser.add_argument("--duration", type=float, default=30.0)
    args = parser.parse_args()
    # AllRulesSilent cycles are expected here; keep the grid readable
    logging.getLogger("parafuzz").setLevel(logging.ERROR)

    plant = PlantParams()
    omegas = np.arange(args.omega[0], args.omega[1] + 1e-9, args.omega[2])
    forces = np.arange(args.force[0], args.force[1] + 1e-9, args.force[2])
    print("omega\\force " + " ".join(f"{f:>5.0f}" for f in forces))
    for om in omegas:
        cells = []
        for fm in forces:
            w = worst_settling(Scaler(args.theta_max, float(om), float(fm)), plant, args.duration)
            cells.append("    ." if w is None else f"{w:>5.1f}")
        print(f"{om:>11.3f} " + " ".join(cells), flush=True)

    legacy = Scaler(args.theta_max, 1.5, 20.0)
    _, m = run_closed_loop(replace(PRESETS["parabolic"], scaler=legacy), plant,
                           np.radians(5.0), 0.0, args.duration)
    print(f"\nomega_max=1.5, force_max=20: parabolic @5deg settled={m.settled} fell={m.fell} "
          f"peak |theta|={m.peak_theta:.3f} rad")


if __name__ == "__main__":
    main()
