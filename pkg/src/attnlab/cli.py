"""Command-line front end.

Subcommands: generate, simulate, scan, sweep, fixed-point. A JSON config
document can set anything; command-line flags override the file, and
built-in defaults fill the rest. One seed drives both network generation
and the experiment master streams.

Exit codes: 0 success, 2 bad configuration or input document, 3 numerical
failure, 4 filesystem trouble.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .dynamics import ModelParams, SimConfig, fixed_point_reduced, simulate_full
from .errors import ConfigError, DomainError, NumericalError, StructuralError
from .experiments import default_sigma_grid, run_noise_sweep, run_scan, summarize_attention_effect
from .network import GENERATOR_KINDS, GeneratorSpec, generate, load_network, save_network
from .output import write_scan_csv, write_sweep_csv, write_trajectory_csv
from .spectral import spectral_summary

CONFIG_SCHEMA = "runconfig-v1"

# config document layout: section -> fields of RunConfig
_LAYOUT = {
    "network": ("kind", "n_nodes", "feature_dim", "dense_fraction", "seed"),
    "params": ("r", "K", "zeta"),
    "sim": ("dt", "t_max", "steady_window", "steady_tol", "a0", "b0"),
    "experiments": ("sigma_max", "sigma_step", "instances", "repeats", "kinds"),
    "run": ("out_dir", "threads", "experiment"),
}

_INT_FIELDS = {"n_nodes", "feature_dim", "seed", "instances", "repeats", "threads"}
_FLOAT_FIELDS = {
    "dense_fraction", "r", "K", "zeta", "dt", "t_max", "steady_window",
    "steady_tol", "a0", "b0", "sigma_max", "sigma_step",
}


@dataclass(frozen=True)
class RunConfig:
    """Flat bag of every knob a run can turn; see _LAYOUT for the file form."""

    kind: str = "sparse"
    n_nodes: int = 30
    feature_dim: int = 100
    dense_fraction: float = 0.3
    seed: int = 0
    r: float = 1.0
    K: float = 1.0
    zeta: float = 0.5
    dt: float = 0.01
    t_max: float = 500.0
    steady_window: float = 10.0
    steady_tol: float = 1e-8
    a0: float = 0.01
    b0: float = 0.0
    sigma_max: float = 1.0
    sigma_step: float = 0.1
    instances: int = 10
    repeats: int = 1
    kinds: tuple[str, ...] = GENERATOR_KINDS
    out_dir: str = "."
    threads: int = 1
    experiment: str | None = None

    def __post_init__(self) -> None:
        for name in _INT_FIELDS:
            value = getattr(self, name)
            if int(value) != value:
                raise ConfigError(f"config field {name!r} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        for name in _FLOAT_FIELDS:
            object.__setattr__(self, name, float(getattr(self, name)))
        if not isinstance(self.kind, str):
            raise ConfigError("config field 'kind' must be a string")
        if self.threads < 0:
            raise ConfigError("config field 'threads' must be nonnegative (0 means one per cpu)")
        object.__setattr__(self, "kinds", tuple(str(k) for k in self.kinds))
        if self.experiment is not None and not isinstance(self.experiment, str):
            raise ConfigError("config field 'experiment' must be a string or null")
        object.__setattr__(self, "out_dir", str(self.out_dir))

    def generator_spec(self) -> GeneratorSpec:
        return GeneratorSpec(
            kind=self.kind,
            n_nodes=self.n_nodes,
            feature_dim=self.feature_dim,
            dense_fraction=self.dense_fraction,
            seed=self.seed,
        )

    def model_params(self) -> ModelParams:
        return ModelParams(r=self.r, K=self.K, zeta=self.zeta)

    def sim_config(self) -> SimConfig:
        return SimConfig(
            dt=self.dt,
            t_max=self.t_max,
            steady_window=self.steady_window,
            steady_tol=self.steady_tol,
            a0=self.a0,
            b0=self.b0,
        )

    def sigma_grid(self) -> tuple[float, ...]:
        return default_sigma_grid(self.sigma_max, self.sigma_step)


def emit_config(cfg: RunConfig) -> str:
    """Serialize a config so that parse_config_text(emit_config(c)) == c."""
    doc: dict = {"schema": CONFIG_SCHEMA}
    for section, fields in _LAYOUT.items():
        doc[section] = {}
        for field in fields:
            value = getattr(cfg, field)
            doc[section][field] = list(value) if isinstance(value, tuple) else value
    return json.dumps(doc, indent=2) + "\n"


def parse_config_text(text: str) -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a mapping")
    schema = doc.get("schema", CONFIG_SCHEMA)
    if schema != CONFIG_SCHEMA:
        raise ConfigError(f"unsupported config schema {schema!r}")
    kwargs = {}
    for section, content in doc.items():
        if section == "schema":
            continue
        if section not in _LAYOUT:
            raise ConfigError(f"unknown config section {section!r}")
        if not isinstance(content, dict):
            raise ConfigError(f"config section {section!r} must be a mapping")
        for key, value in content.items():
            if key not in _LAYOUT[section]:
                raise ConfigError(f"unknown config key {key!r} in section {section!r}")
            kwargs[key] = tuple(value) if key == "kinds" else value
    try:
        return RunConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad config value: {exc}") from None


def parse_config(path: str | os.PathLike) -> RunConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config_text(handle.read())


def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_generate(cfg: RunConfig, args) -> int:
    net = generate(cfg.generator_spec())
    summary = spectral_summary(net)
    path = _out_dir(cfg) / "network.json"
    save_network(net, path)
    print(f"network: kind={cfg.kind} n={cfg.n_nodes} seed={cfg.seed} -> {path}")
    print(f"eigenvalue={summary.eigenvalue!r} mu={summary.mu!r}")
    ranked = sorted(enumerate(summary.centrality), key=lambda item: (-item[1], item[0]))
    shown = ", ".join(f"{i}:{c:.4f}" for i, c in ranked[:5])
    print(f"top centralities: {shown}")
    return 0


def cmd_simulate(cfg: RunConfig, args) -> int:
    net = load_network(args.network)
    params = cfg.model_params()
    record = simulate_full(net, params, cfg.sim_config())
    path = _out_dir(cfg) / "trajectory.csv"
    write_trajectory_csv(record, path, include_boredom=args.with_boredom)
    print(f"trajectory: {record.times.size} steps, {net.n_nodes} nodes -> {path}")
    if record.steady_reached:
        print(f"steady state reached at t={record.times[-1]!r}")
    else:
        print(f"steady state NOT reached by t_max={cfg.t_max!r}")
    observed = float(record.observable[-1])
    summary = spectral_summary(net)
    if summary.eigenvalue > 0.0:
        predicted, _ = fixed_point_reduced(summary.eigenvalue, summary.mu, params)
        gap = abs(observed - predicted) / abs(predicted)
        print(f"observable A: simulated={observed!r} predicted={predicted!r} rel_gap={gap:.3e}")
    else:
        print(f"observable A: simulated={observed!r} (no positive eigenvalue, no prediction)")
    return 0


def cmd_scan(cfg: RunConfig, args) -> int:
    scan = run_scan(cfg.generator_spec(), threads=cfg.threads)
    rows = summarize_attention_effect(scan, cfg.model_params())
    path = _out_dir(cfg) / "scan.csv"
    write_scan_csv(rows, path)
    gains = sum(1 for row in rows if row["delta_exact"] > 0.0)
    print(f"scan: kind={cfg.kind} n={cfg.n_nodes} seed={cfg.seed} -> {path}")
    print(f"pairs={len(rows)} eigenvalue_gains={gains} lambda={scan.lambda_before!r}")
    return 0


def cmd_sweep(cfg: RunConfig, args) -> int:
    result = run_noise_sweep(
        cfg.kinds,
        cfg.sigma_grid(),
        cfg.instances,
        n_nodes=cfg.n_nodes,
        feature_dim=cfg.feature_dim,
        dense_fraction=cfg.dense_fraction,
        master_seed=cfg.seed,
        repeats=cfg.repeats,
        threads=cfg.threads,
    )
    path = _out_dir(cfg) / "sweep.csv"
    write_sweep_csv(result, path)
    print(f"sweep: kinds={','.join(cfg.kinds)} n={cfg.n_nodes} seed={cfg.seed} -> {path}")
    for kind in cfg.kinds:
        rates = result.rates(kind)
        print(f"{kind}: rate[sigma=0]={rates[0]:.3f} rate[sigma=max]={rates[-1]:.3f}")
    return 0


def cmd_fixed_point(cfg: RunConfig, args) -> int:
    if (args.eigenvalue is None) != (args.mu is None):
        raise ConfigError("--eigenvalue and --mu must be given together")
    if args.eigenvalue is not None:
        eigenvalue, mu = args.eigenvalue, args.mu
        source = "given"
    else:
        if args.network is not None:
            net = load_network(args.network)
            source = args.network
        else:
            net = generate(cfg.generator_spec())
            source = f"generated kind={cfg.kind} seed={cfg.seed}"
        summary = spectral_summary(net)
        eigenvalue, mu = summary.eigenvalue, summary.mu
    attention, boredom = fixed_point_reduced(eigenvalue, mu, cfg.model_params())
    print(f"fixed point ({source}): eigenvalue={eigenvalue!r} mu={mu!r}")
    print(f"A={attention!r} B={boredom!r}")
    return 0


_DISPATCH = {
    "generate": cmd_generate,
    "simulate": cmd_simulate,
    "scan": cmd_scan,
    "sweep": cmd_sweep,
    "fixed-point": cmd_fixed_point,
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="JSON run configuration file")
    parser.add_argument("--seed", type=int, default=None, help="generator and master seed")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--kind", choices=GENERATOR_KINDS, default=None, help="network kind")
    parser.add_argument("--nodes", type=int, default=None, help="node count")
    parser.add_argument("--sigma-max", type=float, default=None, help="top of the noise grid")
    parser.add_argument("--instances", type=int, default=None, help="networks per kind in a sweep")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (0 = one per cpu)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="attnlab",
        description="Attention dynamics on competition networks: generation, simulation, imitation experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    gen = sub.add_parser("generate", help="draw a random network and save it")
    _add_common(gen)
    sim = sub.add_parser("simulate", help="integrate the full dynamics on a saved network")
    sim.add_argument("network", help="network document to load")
    sim.add_argument("--with-boredom", action="store_true", help="include boredom columns")
    _add_common(sim)
    scan = sub.add_parser("scan", help="full imitation for every ordered pair of one network")
    _add_common(scan)
    sweep = sub.add_parser("sweep", help="noisy imitation success rates across network families")
    _add_common(sweep)
    fixed = sub.add_parser("fixed-point", help="closed-form resting point of the reduced system")
    fixed.add_argument("--network", default=None, help="network document to load")
    fixed.add_argument("--eigenvalue", type=float, default=None, help="use this eigenvalue directly")
    fixed.add_argument("--mu", type=float, default=None, help="use this reduction coefficient directly")
    _add_common(fixed)
    return parser


def _resolve_config(args) -> RunConfig:
    cfg = parse_config(args.config) if args.config else RunConfig()
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out is not None:
        overrides["out_dir"] = args.out
    if args.kind is not None:
        overrides["kind"] = args.kind
    if args.nodes is not None:
        overrides["n_nodes"] = args.nodes
    if args.sigma_max is not None:
        overrides["sigma_max"] = args.sigma_max
    if args.instances is not None:
        overrides["instances"] = args.instances
    if args.threads is not None:
        overrides["threads"] = args.threads
    overrides["experiment"] = args.command
    return dataclasses.replace(cfg, **overrides)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
        return _DISPATCH[args.command](cfg, args)
    except (ConfigError, StructuralError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
