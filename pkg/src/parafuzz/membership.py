"""Membership curves for seven-set fuzzy partitions.

Four symmetric curve families are supported. Each is defined on a support
``[a, c]`` with peak at ``b`` and half-width ``D = b - a = c - b``, and every
one of them passes through 0.5 at the quarter points ``(a+b)/2`` and
``(b+c)/2``:

* ``TRIANGULAR``   -- straight flanks.
* ``PARABOLIC_I``  -- S-shaped flanks (concave-up foot, concave-down shoulder).
* ``MIXED``        -- linear foot, concave-up parabolic shoulder.
* ``PARABOLIC_II`` -- concave-down foot, concave-up shoulder (a cusp at the peak).
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np


class Label(enum.IntEnum):
    NB = -3
    NM = -2
    NS = -1
    ZE = 0
    PS = 1
    PM = 2
    PB = 3

    def __neg__(self) -> "Label":
        return Label(-int(self))

    @classmethod
    def parse(cls, token: str) -> "Label":
        try:
            return cls[token]
        except KeyError:
            raise ValueError(f"unknown label {token!r}") from None


LABELS: tuple[Label, ...] = tuple(sorted(Label))


class CurveKind(enum.Enum):
    TRIANGULAR = "triangular"
    PARABOLIC_I = "parabolic-i"
    MIXED = "mixed"
    PARABOLIC_II = "parabolic-ii"


# Closed-form integrals in units of D. Each curve is symmetric, so the values
# are twice the integral over one flank u = (x - a)/D in [0, 1], split at u = 1/2:
#   min(mu, 1 - mu):  tri 1/8 + 1/8,  pI 1/12 + 1/12,  mixed 1/8 + 1/6,  pII 1/6 + 1/6
#   mu:               tri 1/8 + 3/8,  pI 1/12 + 5/12,  mixed 1/8 + 1/3,  pII 1/6 + 1/3
_INTERSECTION_PER_D = {
    CurveKind.TRIANGULAR: 2 * (1 / 8 + 1 / 8),
    CurveKind.PARABOLIC_I: 2 * (1 / 12 + 1 / 12),
    CurveKind.MIXED: 2 * (1 / 8 + 1 / 6),
    CurveKind.PARABOLIC_II: 2 * (1 / 6 + 1 / 6),
}
_BASE_AREA_PER_D = {
    CurveKind.TRIANGULAR: 2 * (1 / 8 + 3 / 8),
    CurveKind.PARABOLIC_I: 2 * (1 / 12 + 5 / 12),
    CurveKind.MIXED: 2 * (1 / 8 + 1 / 3),
    CurveKind.PARABOLIC_II: 2 * (1 / 6 + 1 / 3),
}

_SYMMETRY_RTOL = 1e-9


@dataclass(frozen=True)
class MembershipCurve:
    kind: CurveKind
    a: float
    b: float
    c: float

    def __post_init__(self):
        left, right = self.b - self.a, self.c - self.b
        if not (left > 0 and right > 0):
            raise ValueError(f"curve needs a < b < c, got {self.a}, {self.b}, {self.c}")
        if not math.isclose(left, right, rel_tol=_SYMMETRY_RTOL):
            raise ValueError(f"curve must be symmetric: b-a={left} != c-b={right}")

    @classmethod
    def centered(cls, kind: CurveKind, b: float, D: float) -> "MembershipCurve":
        return cls(kind, b - D, b, b + D)

    @property
    def D(self) -> float:
        return (self.c - self.a) / 2

    def __call__(self, x: float) -> float:
        return evaluate(self, x)


def evaluate(curve: MembershipCurve, x: float) -> float:
    """Membership degree of ``x``; zero outside ``[a, c]``."""
    y = _piecewise(curve, x)
    # rounding near the feet can leave values a few ulps outside [0, 1]
    return 0.0 if y < 0.0 else (1.0 if y > 1.0 else y)


def _piecewise(curve: MembershipCurve, x: float) -> float:
    kind, a, b, c = curve.kind, curve.a, curve.b, curve.c
    if x < a or x > c:
        return 0.0
    D = (c - a) / 2
    m1 = (a + b) / 2
    m2 = (b + c) / 2
    if kind is CurveKind.TRIANGULAR:
        if x <= b:
            return (x - a) / D
        return -(x - c) / D
    if kind is CurveKind.PARABOLIC_I:
        if x <= m1:
            return 2 * (x - a) ** 2 / D**2
        if x <= m2:
            return 1 - 2 * (x - b) ** 2 / D**2
        return 2 * (x - c) ** 2 / D**2
    if kind is CurveKind.MIXED:
        if x <= m1:
            return (x - a) / D
        if x <= b:
            return 0.5 + 2 * (x - m1) ** 2 / D**2
        if x <= m2:
            return 0.5 + 2 * (x - m2) ** 2 / D**2
        return -(x - c) / D
    # PARABOLIC_II
    if x <= m1:
        return 0.5 - 2 * (x - m1) ** 2 / D**2
    if x <= b:
        return 0.5 + 2 * (x - m1) ** 2 / D**2
    if x <= m2:
        return 0.5 + 2 * (x - m2) ** 2 / D**2
    return 0.5 - 2 * (x - m2) ** 2 / D**2


def evaluate_array(curve: MembershipCurve, xs) -> np.ndarray:
    """Vectorized :func:`evaluate` via folding onto the left flank."""
    xs = np.asarray(xs, dtype=float)
    D = curve.D
    # distance from the left foot, mirrored about the peak
    u = 1.0 - np.abs(xs - curve.b) / D
    inside = u >= 0
    u = np.clip(u, 0.0, 1.0)
    kind = curve.kind
    low = u <= 0.5
    if kind is CurveKind.TRIANGULAR:
        y = u
    elif kind is CurveKind.PARABOLIC_I:
        y = np.where(low, 2 * u**2, 1 - 2 * (u - 1) ** 2)
    elif kind is CurveKind.MIXED:
        y = np.where(low, u, 0.5 + 2 * (u - 0.5) ** 2)
    else:
        y = np.where(low, 0.5 - 2 * (u - 0.5) ** 2, 0.5 + 2 * (u - 0.5) ** 2)
    return np.where(inside, np.clip(y, 0.0, 1.0), 0.0)


def intersection_area(curve: MembershipCurve) -> float:
    """Area of ``min(mu, 1 - mu)`` over the support."""
    return _INTERSECTION_PER_D[curve.kind] * curve.D


def degree_of_fuzziness(curve: MembershipCurve) -> float:
    """Intersection-with-complement area normalized by support width."""
    return intersection_area(curve) / (curve.c - curve.a)


def base_area(curve: MembershipCurve) -> float:
    return _BASE_AREA_PER_D[curve.kind] * curve.D


@dataclass(frozen=True)
class Partition:
    """Seven evenly spaced curves NB..PB covering ``[lo, hi]``."""

    kind: CurveKind
    curves: dict
    lo: float
    hi: float

    def __getitem__(self, label: Label) -> MembershipCurve:
        return self.curves[label]

    @property
    def D(self) -> float:
        return (self.hi - self.lo) / 6

    def clamp(self, x: float) -> float:
        return min(max(x, self.lo), self.hi)

    def centers(self) -> dict:
        return {label: curve.b for label, curve in self.curves.items()}


def make_partition(kind: CurveKind, lo: float = -1.0, hi: float = 1.0) -> Partition:
    if not lo < hi:
        raise ValueError(f"partition needs lo < hi, got [{lo}, {hi}]")
    D = (hi - lo) / 6
    mid = (lo + hi) / 2
    # built outward from the midpoint so that peaks are exactly antisymmetric about it
    curves = {label: MembershipCurve.centered(kind, mid + int(label) * D, D) for label in LABELS}
    return Partition(kind, curves, lo, hi)


def sample_partition(partition: Partition, n: int = 201, lo: float | None = None,
                     hi: float | None = None) -> Iterable[tuple]:
    """Yield ``(x, mu_NB, ..., mu_PB)`` rows on an even grid."""
    if n < 2:
        raise ValueError("need at least two samples")
    lo = partition.lo if lo is None else lo
    hi = partition.hi if hi is None else hi
    xs = np.linspace(lo, hi, n)
    columns = [evaluate_array(partition[label], xs) for label in LABELS]
    for i, x in enumerate(xs):
        yield (float(x), *(float(col[i]) for col in columns))


def partition_csv(partition: Partition, n: int = 201) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", *(label.name for label in LABELS)])
    for row in sample_partition(partition, n):
        writer.writerow([f"{v:.9g}" for v in row])
    return buf.getvalue()
