"""Closed-loop runs, head-to-head comparisons and report tables."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import statistics
import time
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .controller import PRESETS, ControllerSpec, FuzzyController
from .defuzz import ConsequentSet, InferenceMode
from .membership import (LABELS, CurveKind, Label, MembershipCurve, degree_of_fuzziness,
                         evaluate_array, intersection_area, make_partition, partition_csv)
from .plant import PendulumState, PlantParams, PoleFell, Scaler, step

log = logging.getLogger(__name__)

DEFAULT_SCENARIOS = tuple(
    (math.radians(deg), 0.0) for deg in (2.0, -2.0, 5.0, -5.0, 10.0, -10.0))

TRAJECTORY_COLUMNS = ("t", "theta", "omega", "force_normalized", "force_N", "fired_rule_count")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunMetrics:
    settled: bool
    settling_time: float | None
    peak_theta: float
    fell: bool
    ops_per_cycle: float
    total_ops: int
    silent_cycles: int
    cycles: int
    wall_ns_per_cycle: int = 0
    accuracy_gap_mean: float | None = None
    accuracy_gap_max: float | None = None

    def deterministic(self) -> dict:
        """Everything except wall-clock timing."""
        d = asdict(self)
        d.pop("wall_ns_per_cycle")
        return d


@dataclass
class Trajectory:
    rows: list = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TRAJECTORY_COLUMNS)
        for t, theta, omega, u, force, fired in self.rows:
            writer.writerow([f"{t:.6f}", repr(theta), repr(omega), repr(u), repr(force), fired])
        return buf.getvalue()


def settling(times, thetas, band: float, hold: float) -> tuple[bool, float | None]:
    """First time after which ``|theta| < band`` until the end; settled if that lasts ``hold``."""
    k = len(thetas)
    while k > 0 and abs(thetas[k - 1]) < band:
        k -= 1
    if k == len(thetas):
        return False, None
    t_settle = times[k]
    return times[-1] - t_settle >= hold - 1e-9, t_settle


def run_closed_loop(spec: ControllerSpec, plant: PlantParams, theta0: float, omega0: float,
                    duration: float, *, settle_band: float = 0.01, settle_hold: float = 2.0,
                    controller: FuzzyController | None = None,
                    track_accuracy: bool = False) -> tuple[Trajectory, RunMetrics]:
    if not duration > 0:
        raise ConfigError(f"duration must be positive, got {duration}")
    if abs(theta0) > spec.scaler.theta_max:
        raise ConfigError(f"|theta0|={abs(theta0)} exceeds theta_max={spec.scaler.theta_max}")
    ctrl = controller or FuzzyController(spec)
    theta_max = spec.scaler.theta_max
    n_cycles = int(round(duration / plant.dt))

    state = PendulumState(theta=theta0, omega=omega0)
    traj = Trajectory()
    ops, wall, gaps = [], [], []
    silent = 0
    fell = False
    for k in range(n_cycles):
        t0 = time.perf_counter_ns()
        out = ctrl(state.theta, state.omega)
        wall.append(time.perf_counter_ns() - t0)
        ops.append(out.ops)
        if out.silent:
            silent += 1
        elif track_accuracy:
            gaps.append(ctrl.accuracy_gap(out))
        traj.rows.append((k * plant.dt, state.theta, state.omega, out.u, out.force,
                          out.fired_rules))
        try:
            state = step(state, out.force, plant, theta_max)
        except PoleFell as exc:
            state = exc.state
            fell = True
            break
    else:
        k = n_cycles - 1
    # closing row: the state reached, with the control it would receive next
    out = ctrl(state.theta, state.omega)
    traj.rows.append(((k + 1) * plant.dt, state.theta, state.omega, out.u, out.force,
                      out.fired_rules))

    if silent:
        log.warning("%s: %d of %d cycles fired no rule; zero force applied",
                    spec.name, silent, len(ops))
    times = [r[0] for r in traj.rows]
    thetas = [r[1] for r in traj.rows]
    settled, t_settle = settling(times, thetas, settle_band, settle_hold)
    if fell:
        settled, t_settle = False, None
    metrics = RunMetrics(
        settled=settled,
        settling_time=t_settle,
        peak_theta=max(abs(x) for x in thetas),
        fell=fell,
        ops_per_cycle=round(sum(ops) / len(ops), 6) if ops else 0.0,
        total_ops=sum(ops),
        silent_cycles=silent,
        cycles=len(ops),
        wall_ns_per_cycle=int(statistics.median(wall)) if wall else 0,
        accuracy_gap_mean=sum(gaps) / len(gaps) if gaps else None,
        accuracy_gap_max=max(gaps) if gaps else None,
    )
    return traj, metrics


@dataclass
class ScenarioResult:
    theta0: float
    omega0: float
    a: RunMetrics | None
    b: RunMetrics | None
    error: str | None = None

    @property
    def ops_ratio(self) -> float | None:
        if self.a is None or self.b is None or self.b.ops_per_cycle == 0:
            return None
        return self.a.ops_per_cycle / self.b.ops_per_cycle


@dataclass
class ComparisonReport:
    spec_a: str
    spec_b: str
    results: list

    def to_dict(self) -> dict:
        rows = []
        for r in self.results:
            rows.append({
                "theta0": r.theta0,
                "omega0": r.omega0,
                "a": asdict(r.a) if r.a else None,
                "b": asdict(r.b) if r.b else None,
                "ops_ratio": r.ops_ratio,
                "error": r.error,
            })
        return {"a": self.spec_a, "b": self.spec_b, "scenarios": rows}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        def fmt(v, spec="{:.3f}"):
            return "-" if v is None else spec.format(v)

        head = (f"{'theta0':>8} {'omega0':>7} | {'ctrl':<14} {'fell':>5} {'settle_s':>8} "
                f"{'peak':>7} {'ops/cyc':>8} {'gap_mean':>9} {'gap_max':>8} {'ns/cyc':>8} | ratio")
        lines = [f"A = {self.spec_a}, B = {self.spec_b}", head, "-" * len(head)]
        for r in self.results:
            if r.error:
                lines.append(f"{r.theta0:>8.4f} {r.omega0:>7.3f} | error: {r.error}")
                continue
            for tag, m in (("A " + self.spec_a, r.a), ("B " + self.spec_b, r.b)):
                lines.append(
                    f"{r.theta0:>8.4f} {r.omega0:>7.3f} | {tag:<14.14} {str(m.fell):>5} "
                    f"{fmt(m.settling_time, '{:.2f}'):>8} {m.peak_theta:>7.4f} "
                    f"{m.ops_per_cycle:>8.3f} {fmt(m.accuracy_gap_mean, '{:.4f}'):>9} "
                    f"{fmt(m.accuracy_gap_max, '{:.4f}'):>8} {m.wall_ns_per_cycle:>8d} | "
                    + (fmt(r.ops_ratio) if tag.startswith("B") else ""))
        return "\n".join(lines) + "\n"


def compare(spec_a: ControllerSpec, spec_b: ControllerSpec, scenarios, plant: PlantParams,
            duration: float = 30.0, *, settle_band: float = 0.01, settle_hold: float = 2.0,
            track_accuracy: bool = True) -> ComparisonReport:
    scenarios = list(scenarios)
    if not scenarios:
        raise ConfigError("compare needs at least one scenario")
    results = []
    for theta0, omega0 in scenarios:
        try:
            _, ma = run_closed_loop(spec_a, plant, theta0, omega0, duration,
                                    settle_band=settle_band, settle_hold=settle_hold,
                                    track_accuracy=track_accuracy)
            _, mb = run_closed_loop(spec_b, plant, theta0, omega0, duration,
                                    settle_band=settle_band, settle_hold=settle_hold,
                                    track_accuracy=track_accuracy)
            results.append(ScenarioResult(theta0, omega0, ma, mb))
        except Exception as exc:  # one bad scenario must not sink the rest
            log.error("scenario (%s, %s) failed: %s", theta0, omega0, exc)
            results.append(ScenarioResult(theta0, omega0, None, None, str(exc)))
    return ComparisonReport(spec_a.name, spec_b.name, results)


# printed in the source table as (area in units of D, degree of fuzziness)
PRINTED_FUZZINESS = {
    CurveKind.TRIANGULAR: ("D/2", 1 / 2, 0.25),
    CurveKind.PARABOLIC_I: ("2D/3", 2 / 3, 0.16),
    CurveKind.MIXED: ("5D/12", 5 / 12, 0.29),
    CurveKind.PARABOLIC_II: ("D/3", 1 / 3, 0.33),
}


def numeric_intersection_area(curve: MembershipCurve, panels: int = 100_000) -> float:
    xs = np.linspace(curve.a, curve.c, panels + 1)
    mu = evaluate_array(curve, xs)
    return float(np.trapezoid(np.minimum(mu, 1.0 - mu), xs))


def fuzziness_report(tolerance: float = 0.01) -> list[dict]:
    rows = []
    for kind, (printed_area, printed_area_d, printed_f) in PRINTED_FUZZINESS.items():
        curve = MembershipCurve.centered(kind, 0.0, 1.0)
        area = intersection_area(curve)
        f = degree_of_fuzziness(curve)
        rows.append({
            "kind": kind.value,
            "area_per_D": area,
            "numeric_area_per_D": numeric_intersection_area(curve),
            "printed_area": printed_area,
            "area_match": math.isclose(area, printed_area_d, rel_tol=1e-9),
            "fuzziness": f,
            "printed_fuzziness": printed_f,
            "fuzziness_match": abs(f - printed_f) <= tolerance,
        })
    return rows


def format_fuzziness_table(rows) -> str:
    head = f"{'kind':<14} {'area/D':>8} {'numeric':>9} {'printed':>8} {'area?':>6} {'f':>7} {'printed':>8} {'f?':>5}"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(
            f"{r['kind']:<14} {r['area_per_D']:>8.5f} {r['numeric_area_per_D']:>9.5f} "
            f"{r['printed_area']:>8} {('ok' if r['area_match'] else 'DIFF'):>6} "
            f"{r['fuzziness']:>7.4f} {r['printed_fuzziness']:>8.2f} "
            f"{('ok' if r['fuzziness_match'] else 'DIFF'):>5}")
    return "\n".join(lines) + "\n"


def consequent_csv(spec: ControllerSpec, strengths: dict, n: int = 201) -> str:
    """Sampled consequent sets (clipped or scaled) plus their max-envelope."""
    partition = make_partition(spec.kind)
    sets = [ConsequentSet(label, partition[label], s, spec.mode)
            for label, s in sorted(strengths.items())]
    xs = np.linspace(partition.lo, partition.hi, n)
    columns = [cs.evaluate_array(xs) for cs in sets]
    envelope = np.max(columns, axis=0) if columns else np.zeros_like(xs)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", *(cs.label.name for cs in sets), "envelope"])
    for i, x in enumerate(xs):
        writer.writerow([f"{v:.9g}" for v in (x, *(col[i] for col in columns), envelope[i])])
    return buf.getvalue()


# --- configuration -----------------------------------------------------------------

@dataclass
class HarnessConfig:
    plant: PlantParams = field(default_factory=PlantParams)
    scaler: Scaler = field(default_factory=Scaler)
    preset: str = "parabolic"
    compare: tuple = ("conventional", "parabolic")
    rules: str | None = None
    transpose_rules: bool = False
    output_sign: float = 1.0
    theta0: float = math.radians(5.0)
    omega0: float = 0.0
    duration: float = 30.0
    settle_band: float = 0.01
    settle_hold: float = 2.0
    scenarios: tuple = DEFAULT_SCENARIOS
    out: str = "out"

    def controller_spec(self, preset: str | None = None) -> ControllerSpec:
        name = preset or self.preset
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
        return replace(PRESETS[name], rules_path=self.rules, transpose_rules=self.transpose_rules,
                       scaler=self.scaler, output_sign=self.output_sign)


def _build(cls, data: dict, where: str):
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def load_config(path: str | Path | None) -> HarnessConfig:
    cfg = HarnessConfig()
    if path is None:
        return cfg
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    data = dict(data)
    if "plant" in data:
        data["plant"] = _build(PlantParams, data["plant"], "plant")
    if "scaler" in data:
        data["scaler"] = _build(Scaler, data["scaler"], "scaler")
    if "scenarios" in data:
        try:
            data["scenarios"] = tuple((float(t), float(w)) for t, w in data["scenarios"])
        except (TypeError, ValueError):
            raise ConfigError("scenarios must be a list of [theta0, omega0] pairs") from None
    if "compare" in data:
        data["compare"] = tuple(data["compare"])
    return _build(HarnessConfig, data, "config")


def metrics_json(metrics: RunMetrics, spec: ControllerSpec, cfg: HarnessConfig) -> str:
    doc = {
        "preset": spec.name,
        "kind": spec.kind.value,
        "mode": spec.mode.value,
        "theta0": cfg.theta0,
        "omega0": cfg.omega0,
        "duration": cfg.duration,
        "metrics": metrics.deterministic(),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_strengths(text: str) -> dict:
    out = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        name, _, value = item.partition("=")
        try:
            out[Label.parse(name.strip())] = float(value)
        except ValueError as exc:
            raise ConfigError(f"bad strength {item!r}: {exc}") from None
    return out

