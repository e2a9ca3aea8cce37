"""Consequent sets, their areas, and centroid defuzzification.

Two ways of turning a fired output set into a consequent:

* ``CLIP``  -- ``min(mu(x), s)``; for triangles this is a trapezoid.
* ``SCALE`` -- ``s * mu(x)``; the shape is kept, so its area is ``s`` times
  the unscaled area, which can be tabulated once per output set.

:func:`centroid_defuzz` combines per-set areas and centers (overlaps are
summed, not merged). :func:`reference_centroid` integrates the max-envelope
numerically and exists for measuring how far the fast method drifts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .membership import CurveKind, Label, MembershipCurve, Partition, base_area, evaluate_array


class AllRulesSilent(RuntimeError):
    """No consequent set has positive strength."""


class InferenceMode(enum.Enum):
    CLIP = "clip"
    SCALE = "scale"


class OpCounter:
    """Tally of arithmetic operations in the area and centroid kernels."""

    __slots__ = ("mul", "div", "add")

    def __init__(self):
        self.mul = 0
        self.div = 0
        self.add = 0

    @property
    def total(self) -> int:
        return self.mul + self.div + self.add

    def snapshot(self) -> dict:
        return {"mul": self.mul, "div": self.div, "add": self.add, "total": self.total}

    def reset(self):
        self.mul = self.div = self.add = 0


@dataclass(frozen=True)
class ConsequentSet:
    label: Label
    curve: MembershipCurve
    strength: float
    mode: InferenceMode

    def evaluate_array(self, xs) -> np.ndarray:
        mu = evaluate_array(self.curve, xs)
        if self.mode is InferenceMode.CLIP:
            return np.minimum(mu, self.strength)
        return self.strength * mu


class PrecomputedAreas(dict):
    """Unscaled area of every output set, keyed by label."""

    @classmethod
    def from_partition(cls, partition: Partition) -> "PrecomputedAreas":
        return cls({label: base_area(curve) for label, curve in partition.curves.items()})


def _check_strength(s: float):
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"strength must lie in [0, 1], got {s}")


def clipped_area(curve: MembershipCurve, s: float, counter: OpCounter | None = None) -> float:
    """Area of a triangle clipped at height ``s``: ``D*s*(2 - s)``."""
    _check_strength(s)
    if curve.kind is not CurveKind.TRIANGULAR:
        raise ValueError(f"clipped areas are only defined for triangular sets, got {curve.kind}")
    if counter is not None:
        counter.add += 1
        counter.mul += 2
    return curve.D * s * (2.0 - s)


def scaled_area(label: Label, s: float, pre: PrecomputedAreas,
                counter: OpCounter | None = None) -> float:
    _check_strength(s)
    if counter is not None:
        counter.mul += 1
    return s * pre[label]


def centroid_defuzz(consequents, pre: PrecomputedAreas,
                    counter: OpCounter | None = None) -> float:
    """Area-weighted mean of the fired sets' peak abscissas."""
    num = 0.0
    den = 0.0
    any_fired = False
    for cs in consequents:
        if cs.strength <= 0:
            continue
        any_fired = True
        if cs.mode is InferenceMode.CLIP:
            area = clipped_area(cs.curve, cs.strength, counter)
        else:
            area = scaled_area(cs.label, cs.strength, pre, counter)
        num += area * cs.curve.b
        den += area
        if counter is not None:
            counter.mul += 1
            counter.add += 2
    if not any_fired:
        raise AllRulesSilent("no consequent set has positive strength")
    if counter is not None:
        counter.div += 1
    return num / den


def reference_centroid(consequents, samples: int = 20001) -> float:
    """Centroid of the max-envelope of all consequents, by trapezoidal integration.

    The grid spans the union of the fired sets' supports, so edge sets are
    not truncated at the universe bounds.
    """
    fired = [cs for cs in consequents if cs.strength > 0]
    if not fired:
        raise AllRulesSilent("no consequent set has positive strength")
    lo = min(cs.curve.a for cs in fired)
    hi = max(cs.curve.c for cs in fired)
    xs = np.linspace(lo, hi, samples)
    envelope = np.max([cs.evaluate_array(xs) for cs in fired], axis=0)
    return float(np.trapezoid(xs * envelope, xs) / np.trapezoid(envelope, xs))


def consequents_from(strengths: dict, partition: Partition, mode: InferenceMode) -> list:
    return [ConsequentSet(label, partition[label], s, mode)
            for label, s in sorted(strengths.items()) if s > 0]
