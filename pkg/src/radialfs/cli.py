"""Command-line experiment runner.

Subcommands:
  radialfs run <config>    run the experiment named in the config file
  radialfs list            list experiment names with one-line docs
  radialfs map --region=<fig1|fig2|fig3> --rect=a,b,c,d --res=N [--d=D]

Config files are flat key = value text with an optional [experiment] section
(INI style); JSON files ({"experiment": ..., "seed": ..., ...}) are accepted
as an alternative.  The RADIALFS_SEED environment variable overrides the
config seed.  Exit codes: 0 all assertions pass, 1 assertion failure,
2 config or runtime error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

from .decay import classification_map
from .errors import ConfigError, RadialfsError
from .experiments import ExperimentConfig, list_experiments, run_experiment
from .spaces import fig1_region, fig2_region, fig3_region


def _load_config(path: Path) -> ExperimentConfig:
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    text = path.read_text()
    data = {}
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.load(open(path))
        except json.JSONDecodeError as e:
            raise ConfigError(f"bad JSON config {path}: line {e.lineno}: {e.msg}")
    else:
        parser = configparser.ConfigParser()
        first = next((ln for ln in text.splitlines() if ln.strip()), "")
        if not first.startswith("["):
            text = "[experiment]\n" + text
        try:
            parser.read_string(text)
        except configparser.Error as e:
            raise ConfigError(f"bad config {path}: {e}")
        for section in parser.sections():
            data.update(dict(parser[section]))
    if "experiment" not in data:
        raise ConfigError(f"config {path} is missing the 'experiment' field")
    name = str(data.pop("experiment"))
    seed = int(data.pop("seed", 20260810))
    outdir = Path(data.pop("output_dir", "out"))
    return ExperimentConfig(name, seed=seed, output_dir=outdir,
                            options={k: str(v) for k, v in data.items()})


def _cmd_run(args) -> int:
    cfg = _load_config(Path(args.config))
    if getattr(args, "parallel", False):
        cfg.options["parallel"] = "1"
    result = run_experiment(cfg)
    for a in result.assertions:
        status = "pass" if a.passed else "FAIL"
        print(f"[{status}] {result.name}: {a.name} = {a.measured:.6g} "
              f"({a.kind} {a.threshold:g}; {a.provenance})")
    print(f"artifacts: {', '.join(str(p) for p in result.artifacts)}")
    return 0 if result.passed else 1


def _cmd_list(_args) -> int:
    for name, doc in list_experiments():
        print(f"{name:26s} {doc}")
    return 0


def _cmd_map(args) -> int:
    try:
        a, b, c, d = (float(x) for x in args.rect.split(","))
    except ValueError:
        raise ConfigError(f"--rect must be four comma-separated numbers, got {args.rect!r}")
    makers = {"fig1": fig1_region, "fig2": fig2_region, "fig3": fig3_region}
    if args.region not in makers:
        raise ConfigError(f"--region must be one of {sorted(makers)}")
    region = makers[args.region](args.d)
    rows = classification_map(region, (a, b, c, d), args.res)
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        fh.write("inv_p,s,label\n")
        for inv_p, s, label in rows:
            fh.write(f"{inv_p!r},{s!r},{label}\n")
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="radialfs",
                                     description="radial function space experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config")
    p_run.add_argument("config")
    p_run.add_argument("--parallel", action="store_true",
                       help="witness-level parallelism with deterministic merge")
    p_run.set_defaults(func=_cmd_run)

    p_list = sub.add_parser("list", help="list experiments")
    p_list.set_defaults(func=_cmd_list)

    p_map = sub.add_parser("map", help="rasterize a classification figure")
    p_map.add_argument("--region", required=True)
    p_map.add_argument("--rect", required=True, help="inv_p_min,inv_p_max,s_min,s_max")
    p_map.add_argument("--res", type=int, default=60)
    p_map.add_argument("--d", type=int, default=2)
    p_map.add_argument("--output", default="out/classification.csv")
    p_map.set_defaults(func=_cmd_map)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except RadialfsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
