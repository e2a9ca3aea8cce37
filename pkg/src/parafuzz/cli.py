"""Command line entry point: ``parafuzz run|compare|fuzziness|curves``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .harness import (ConfigError, consequent_csv, compare, format_fuzziness_table,
                      fuzziness_report, load_config, metrics_json, parse_strengths,
                      run_closed_loop)
from .membership import make_partition, partition_csv
from .rulebase import RuleParseError, load_rule_table

log = logging.getLogger("parafuzz")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--rules", help="rule grid file (default: built-in table)")
    p.add_argument("--transpose-rules", action="store_true", default=None,
                   help="read grid rows as angular velocity and columns as angle")
    p.add_argument("--preset", choices=["conventional", "parabolic"])
    p.add_argument("--out", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parafuzz", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="one closed-loop simulation -> CSV + metrics JSON")
    _common(run)
    run.add_argument("--theta0", type=float, help="initial angle, rad")
    run.add_argument("--omega0", type=float, help="initial angular velocity, rad/s")
    run.add_argument("--duration", type=float, help="simulated seconds")

    cmp_ = sub.add_parser("compare", help="paired runs of two presets over the scenario suite")
    _common(cmp_)
    cmp_.add_argument("--theta0", type=float, help="single scenario angle instead of the suite")
    cmp_.add_argument("--omega0", type=float, default=None)
    cmp_.add_argument("--duration", type=float)
    cmp_.add_argument("--no-accuracy", action="store_true",
                      help="skip per-cycle reference centroid (faster)")

    fz = sub.add_parser("fuzziness", help="membership analysis table")
    fz.add_argument("--json", action="store_true")

    cv = sub.add_parser("curves", help="sample primary and consequent sets to CSV")
    _common(cv)
    cv.add_argument("--samples", type=int, default=201)
    cv.add_argument("--strengths", default="NS=0.5,ZE=1.0",
                    help="fired strengths for the consequent plot, e.g. NS=0.5,ZE=1.0")
    return parser


def _config(args):
    cfg = load_config(args.config)
    overrides = {}
    for name in ("rules", "preset", "out", "theta0", "omega0", "duration", "transpose_rules"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    cfg = replace(cfg, **overrides)
    # surface grid errors before any simulation starts
    load_rule_table(cfg.rules, transpose=cfg.transpose_rules)
    return cfg


def cmd_run(args) -> int:
    cfg = _config(args)
    spec = cfg.controller_spec()
    traj, metrics = run_closed_loop(spec, cfg.plant, cfg.theta0, cfg.omega0, cfg.duration,
                                    settle_band=cfg.settle_band, settle_hold=cfg.settle_hold)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "trajectory.csv").write_text(traj.to_csv())
    (out / "metrics.json").write_text(metrics_json(metrics, spec, cfg))
    (out / "timing.json").write_text(json.dumps(
        {"wall_ns_per_cycle": metrics.wall_ns_per_cycle, "cycles": metrics.cycles}) + "\n")
    status = "FELL" if metrics.fell else ("settled" if metrics.settled else "not settled")
    print(f"{spec.name}: {status}, settling_time={metrics.settling_time}, "
          f"peak={metrics.peak_theta:.4f} rad, ops/cycle={metrics.ops_per_cycle:.3f} -> {out}")
    return 0


def cmd_compare(args) -> int:
    cfg = _config(args)
    spec_a = cfg.controller_spec(cfg.compare[0])
    spec_b = cfg.controller_spec(cfg.compare[1])
    if args.theta0 is not None:
        scenarios = [(args.theta0, args.omega0 or 0.0)]
    else:
        scenarios = cfg.scenarios
    report = compare(spec_a, spec_b, scenarios, cfg.plant, cfg.duration,
                     settle_band=cfg.settle_band, settle_hold=cfg.settle_hold,
                     track_accuracy=not args.no_accuracy)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    text = report.to_text()
    (out / "comparison.json").write_text(report.to_json())
    (out / "comparison.txt").write_text(text)
    print(text, end="")
    return 0


def cmd_fuzziness(args) -> int:
    rows = fuzziness_report()
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(format_fuzziness_table(rows), end="")
    return 0


def cmd_curves(args) -> int:
    cfg = _config(args)
    spec = cfg.controller_spec()
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    primary = out / f"primary_{spec.kind.value}.csv"
    consequent = out / f"consequent_{spec.name}.csv"
    primary.write_text(partition_csv(make_partition(spec.kind), args.samples))
    consequent.write_text(consequent_csv(spec, parse_strengths(args.strengths), args.samples))
    print(f"wrote {primary} and {consequent}")
    return 0


COMMANDS = {"run": cmd_run, "compare": cmd_compare, "fuzziness": cmd_fuzziness,
            "curves": cmd_curves}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, RuleParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
