"""Command-line interface: ``wmrr <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import formats
from .consistency import resolve_inconsistency
from .datasets import generate_clean
from .discovery import discover_rules
from .errors import ConfigError, WMRRError
from .evaluation import NoiseSpec, evaluate, inject_noise, run_experiment
from .model import Kind
from .repair import repair_dataset
from .similarity import SimilarityThreshold


@dataclass
class RunConfig:
    theta: float = 0.6
    sim_threshold: float = 2.0
    num_threshold: float | None = None
    seed: int = 0
    noise_rate: float = 0.10
    typo_rate: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise ConfigError("--theta must lie in [0, 1]")
        if self.sim_threshold < 0 or (self.num_threshold is not None and self.num_threshold < 0):
            raise ConfigError("similarity thresholds must be non-negative")

    @property
    def threshold(self) -> SimilarityThreshold:
        return SimilarityThreshold(string=self.sim_threshold, numeric=self.num_threshold)


@dataclass
class ExperimentConfig:
    """JSON experiment description. Either ``clean`` + ``fds`` paths or a ``generator`` block."""

    clean: str | None = None
    fds: str | None = None
    generator: dict | None = None
    thetas: list = field(default_factory=lambda: [0.6])
    typo_rates: list = field(default_factory=lambda: [0.5])
    noise_rate: float = 0.10
    seed: int = 0
    sim_threshold: float = 2.0
    num_threshold: float | None = None
    lhs_typos_only: bool = False
    numeric: list = field(default_factory=list)

    @classmethod
    def load(cls, path) -> ExperimentConfig:
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
            cfg = cls(**raw)
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            raise ConfigError(f"bad experiment config {path}: {exc}") from exc
        if cfg.generator is None and (cfg.clean is None or cfg.fds is None):
            raise ConfigError("experiment config needs 'clean' and 'fds', or 'generator'")
        base = Path(path).parent
        if cfg.clean is not None:
            cfg.clean = str(base / cfg.clean)
        if cfg.fds is not None:
            cfg.fds = str(base / cfg.fds)
        return cfg


def _kinds(numeric: str | list | None) -> dict[str, Kind]:
    if not numeric:
        return {}
    names = numeric.split(",") if isinstance(numeric, str) else numeric
    return {n.strip(): Kind.NUMERIC for n in names if n.strip()}


def _config(args) -> RunConfig:
    return RunConfig(theta=args.theta, sim_threshold=args.sim_threshold, num_threshold=args.num_threshold,
                     seed=args.seed, noise_rate=args.noise_rate, typo_rate=args.typo_rate)


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load(path, args, kinds=None):
    kinds = {**_kinds(args.numeric), **(kinds or {})}
    return formats.load_csv(path, kinds, args.id_column)


def cmd_discover(args) -> int:
    cfg = _config(args)
    d = _load(args.data, args)
    fds = formats.parse_fd_file(args.fds, d.schema)
    rules = discover_rules(d, fds, cfg.theta)
    _write(formats.serialize_rules(rules, d.schema), args.out)
    print(f"discovered {len(rules)} rules", file=sys.stderr)
    return 0


def cmd_check(args) -> int:
    cfg = _config(args)
    text = Path(args.rules).read_text(encoding="utf-8")
    schema = formats.rule_file_schema(text)
    rules = formats.deserialize_rules(text, schema)
    kept, log = resolve_inconsistency(rules, cfg.threshold)
    _write(formats.serialize_rules(kept, schema), args.out)
    _write(formats.resolution_log_json(log), args.log)
    print(f"kept {len(kept)} of {len(rules)} rules, removed {len(log)}", file=sys.stderr)
    return 0


def cmd_repair(args) -> int:
    cfg = _config(args)
    text = Path(args.rules).read_text(encoding="utf-8")
    schema = formats.rule_file_schema(text)
    d = _load(args.data, args, {a.name: a.kind for a in schema.attributes})
    rules = formats.deserialize_rules(text, d.schema)
    fds = formats.parse_fd_file(args.fds, d.schema)
    repaired, report = repair_dataset(d, rules, fds, cfg.threshold)
    _write(formats.dataset_to_csv(repaired, args.id_column), args.out)
    if args.report:
        _write(formats.repair_report_json(report, d.schema), args.report)
    print(f"#Repair={report.n_repairs} #Verify={report.n_verifies}", file=sys.stderr)
    return 0


def cmd_inject(args) -> int:
    cfg = _config(args)
    clean = _load(args.data, args)
    fds = formats.parse_fd_file(args.fds, clean.schema)
    spec = NoiseSpec(cfg.noise_rate, cfg.typo_rate, cfg.seed, lhs_typos_only=args.lhs_typos_only)
    dirty, log = inject_noise(clean, fds, spec)
    _write(formats.dataset_to_csv(dirty, args.id_column), args.out)
    if args.log:
        _write(formats.error_log_csv(log, clean.schema), args.log)
    print(f"injected {len(log)} errors", file=sys.stderr)
    return 0


def cmd_evaluate(args) -> int:
    clean = _load(args.clean, args)
    kinds = {a.name: a.kind for a in clean.schema.attributes}
    repaired = _load(args.repaired, args, kinds)
    dirty = _load(args.dirty, args, kinds)
    metrics = evaluate(repaired, dirty, clean)
    _write(str(metrics) + "\n", args.out)
    return 0


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    if cfg.generator is not None:
        clean, fds = generate_clean(**cfg.generator)
    else:
        clean = formats.load_csv(cfg.clean, _kinds(cfg.numeric))
        fds = formats.parse_fd_file(cfg.fds, clean.schema)
    th = SimilarityThreshold(string=cfg.sim_threshold, numeric=cfg.num_threshold)
    rows = run_experiment(clean, fds, cfg.thetas, cfg.typo_rates, cfg.noise_rate, cfg.seed, th,
                          cfg.lhs_typos_only, timings=args.timings)
    _write(formats.experiment_report(rows), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta", type=float, default=0.6, help="rule adoption threshold on w1")
    common.add_argument("--sim-threshold", type=float, default=2.0, help="edit-distance threshold")
    common.add_argument("--num-threshold", type=float, default=None,
                        help="absolute numeric threshold (default: 0.1%% of the pattern value)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--noise-rate", type=float, default=0.10)
    common.add_argument("--typo-rate", type=float, default=0.5)
    common.add_argument("--numeric", default=None, help="comma-separated numeric column names")
    common.add_argument("--id-column", default=None, help="CSV column holding tuple ids")
    common.add_argument("--out", default=None, help="output path (default: stdout)")

    parser = argparse.ArgumentParser(prog="wmrr", description="Discover and apply matching rectifying rules.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discover", parents=[common], help="discover rules from dirty data")
    p.add_argument("data")
    p.add_argument("--fds", required=True)
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("check", parents=[common], help="resolve rule inconsistencies")
    p.add_argument("--rules", required=True)
    p.add_argument("--log", default=None, help="resolution log path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("repair", parents=[common], help="repair data with a rule file")
    p.add_argument("data")
    p.add_argument("--rules", required=True)
    p.add_argument("--fds", required=True)
    p.add_argument("--report", default=None, help="repair report path")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("inject-noise", parents=[common], help="corrupt clean data")
    p.add_argument("data")
    p.add_argument("--fds", required=True)
    p.add_argument("--log", default=None, help="error log path")
    p.add_argument("--lhs-typos-only", action="store_true")
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("evaluate", parents=[common], help="score a repair against ground truth")
    p.add_argument("repaired")
    p.add_argument("dirty")
    p.add_argument("clean")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("experiment", parents=[common], help="run a noise/threshold sweep")
    p.add_argument("config")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WMRRError, OSError, ValueError) as exc:
        print(f"wmrr {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
