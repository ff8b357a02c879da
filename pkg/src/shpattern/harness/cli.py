"""``shpattern`` command line.

Exit codes: 0 success, 2 config error, 3 solver blow-up, 4 clock/grid mismatch.
"""

import argparse
import sys

from ..errors import BlowUp, ClockMismatch, ConfigError, GridMismatch
from .config import EXPERIMENTS, RunConfig, load_config
from .experiments import run_experiment


def build_parser():
    parser = argparse.ArgumentParser(prog="shpattern", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="flat 'key = value' config file (a run manifest also works)")
        p.add_argument("--seed", type=int)
        p.add_argument("--out")
        p.add_argument("--no-noise", action="store_true", help="deterministic run")
        p.add_argument("--snapshots", help="comma-separated times on the experiment's clock")
        if name == "simulate-sh":
            p.add_argument("--mode", choices=("direct", "shifted"))
        if name == "convert":
            p.add_argument("--a-real")
            p.add_argument("--a-imag")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    overrides = {"experiment": args.experiment, "seed": args.seed, "out": args.out}
    if args.no_noise:
        overrides["noise"] = False
    if args.snapshots:
        overrides["snapshots"] = tuple(float(t) for t in args.snapshots.split(","))
    overrides["sh_mode"] = getattr(args, "mode", None)
    overrides["a_real_file"] = getattr(args, "a_real", None)
    overrides["a_imag_file"] = getattr(args, "a_imag", None)
    try:
        if args.config:
            cfg = load_config(args.config, **overrides)
        else:
            cfg = RunConfig(**{k: v for k, v in overrides.items() if v is not None})
        rec = run_experiment(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except BlowUp as exc:
        print(f"solver blow-up: {exc}", file=sys.stderr)
        return 3
    except (ClockMismatch, GridMismatch) as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return 4
    print(f"{cfg.experiment}: wrote {len(rec.files)} files to {rec.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
