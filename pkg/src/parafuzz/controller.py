"""Two-input fuzzy controller assembled from a partition, rule table and defuzzifier."""

from __future__ import annotations

from dataclasses import dataclass, field

from .defuzz import (AllRulesSilent, InferenceMode, OpCounter, PrecomputedAreas,
                     centroid_defuzz, consequents_from, reference_centroid)
from .membership import CurveKind, make_partition
from .plant import Scaler, normalize
from .rulebase import RuleTable, fuzzify, infer, load_rule_table


@dataclass(frozen=True)
class ControllerSpec:
    name: str
    kind: CurveKind
    mode: InferenceMode
    rules_path: str | None = None
    transpose_rules: bool = False
    scaler: Scaler = field(default_factory=Scaler)
    # maps a positive crisp output onto a cart force that rights a positively leaning pole
    output_sign: float = 1.0

    def __post_init__(self):
        if self.mode is InferenceMode.CLIP and self.kind is not CurveKind.TRIANGULAR:
            raise ValueError("clip inference is only supported with triangular sets")
        if self.output_sign not in (1.0, -1.0):
            raise ValueError("output_sign must be +1 or -1")


PRESETS = {
    "conventional": ControllerSpec("conventional", CurveKind.TRIANGULAR, InferenceMode.CLIP),
    "parabolic": ControllerSpec("parabolic", CurveKind.PARABOLIC_II, InferenceMode.SCALE),
}


@dataclass
class ControlOutput:
    u: float
    force: float
    fired_rules: int
    ops: int
    silent: bool
    consequents: list


class FuzzyController:
    def __init__(self, spec: ControllerSpec, table: RuleTable | None = None):
        self.spec = spec
        if table is None:
            table = load_rule_table(spec.rules_path, transpose=spec.transpose_rules)
        self.table = table
        self.inputs = make_partition(spec.kind)
        self.outputs = make_partition(spec.kind)
        self.areas = PrecomputedAreas.from_partition(self.outputs)
        self.counter = OpCounter()

    def __call__(self, theta: float, omega: float) -> ControlOutput:
        sc = self.spec.scaler
        angle = fuzzify(self.inputs, normalize(theta, sc.theta_max))
        velocity = fuzzify(self.inputs, normalize(omega, sc.omega_max))
        fired = infer(self.table, angle, velocity)
        consequents = consequents_from(fired.strengths, self.outputs, self.spec.mode)
        before = self.counter.total
        try:
            u = centroid_defuzz(consequents, self.areas, self.counter)
            silent = False
        except AllRulesSilent:
            u = 0.0
            silent = True
        ops = self.counter.total - before
        force = self.spec.output_sign * sc.denormalize_force(u)
        return ControlOutput(u, force, fired.fired_rules, ops, silent, consequents)

    def accuracy_gap(self, out: ControlOutput, samples: int = 10001) -> float | None:
        """``|crisp - envelope centroid|`` for one control step; None when nothing fired."""
        if out.silent:
            return None
        return abs(out.u - reference_centroid(out.consequents, samples))
