"""Independent reference computations used by the tests.

Nothing here calls into the closed forms under test: curves are re-written
from their piecewise equations on raw ``x`` and areas come from trapezoidal
integration.
"""

import numpy as np

from parafuzz.membership import LABELS

PANELS = 100_000


def curve_values(kind: str, a: float, b: float, c: float, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    D = b - a
    m1, m2 = (a + b) / 2, (b + c) / 2
    if kind == "triangular":
        conds = [(a <= x) & (x <= b), (b < x) & (x <= c)]
        vals = [(x - a) / D, -(x - c) / D]
    elif kind == "parabolic-i":
        conds = [(a <= x) & (x <= m1), (m1 < x) & (x <= m2), (m2 < x) & (x <= c)]
        vals = [2 * (x - a) ** 2 / D**2, 1 - 2 * (x - b) ** 2 / D**2, 2 * (x - c) ** 2 / D**2]
    elif kind == "mixed":
        conds = [(a <= x) & (x <= m1), (m1 < x) & (x <= b), (b < x) & (x <= m2), (m2 < x) & (x <= c)]
        vals = [(x - a) / D, 0.5 + 2 * (x - m1) ** 2 / D**2, 0.5 + 2 * (x - m2) ** 2 / D**2,
                -(x - c) / D]
    elif kind == "parabolic-ii":
        conds = [(a <= x) & (x <= m1), (m1 < x) & (x <= b), (b < x) & (x <= m2), (m2 < x) & (x <= c)]
        vals = [0.5 - 2 * (x - m1) ** 2 / D**2, 0.5 + 2 * (x - m1) ** 2 / D**2,
                0.5 + 2 * (x - m2) ** 2 / D**2, 0.5 - 2 * (x - m2) ** 2 / D**2]
    else:
        raise ValueError(kind)
    return np.select(conds, vals, default=0.0)


def trapz(f, lo, hi, panels=PANELS):
    xs = np.linspace(lo, hi, panels + 1)
    return float(np.trapezoid(f(xs), xs))


def intersection_area(kind, a, b, c, panels=PANELS):
    def f(x):
        mu = curve_values(kind, a, b, c, x)
        return np.minimum(mu, 1 - mu)
    return trapz(f, a, c, panels)


def base_area(kind, a, b, c, panels=PANELS):
    return trapz(lambda x: curve_values(kind, a, b, c, x), a, c, panels)


def clipped_area(a, b, c, s, panels=PANELS):
    return trapz(lambda x: np.minimum(curve_values("triangular", a, b, c, x), s), a, c, panels)


def brute_force_infer(entries: dict, angle: dict, velocity: dict) -> dict:
    """Walk all 49 cells of the grid."""
    out = {label: 0.0 for label in LABELS}
    for row in LABELS:
        for col in LABELS:
            target = entries.get((row, col))
            if target is None:
                continue
            s = min(angle[row], velocity[col])
            out[target] = max(out[target], s)
    return out
