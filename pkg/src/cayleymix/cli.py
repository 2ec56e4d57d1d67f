"""Command-line interface.

Subcommands: entropic, tvcurve, dalpha, typdist, cutoff-profile,
lower-bound-audit, validate.  A JSON config file can preload any flag set;
explicit flags win.  CSV column contracts are documented in docs/formats.md.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import entropic as entropic_mod
from . import harness, mixingstats, spectral
from .group import parse_group, sample_generators


def _floats(text) -> tuple[float, ...]:
    if isinstance(text, (list, tuple)):
        return tuple(float(x) for x in text)
    return tuple(float(tok) for tok in text.split(","))


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON file of defaults; flags win")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", help="output path (default stdout)")


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    if getattr(args, "config", None):
        with open(args.config) as fh:
            overrides = json.load(fh)
        defaults = {a.dest: a.default for a in args.subparser._actions}
        for key, value in overrides.items():
            if hasattr(args, key) and getattr(args, key) == defaults.get(key):
                setattr(args, key, value)
    for name in ("kind", "group", "k", "n"):
        if hasattr(args, name) and getattr(args, name) is None:
            args.subparser.error(f"--{name} is required (flag or config file)")
    return args


def cmd_entropic(args) -> int:
    schedule = entropic_mod.solve_t0(args.kind, args.k, args.n)
    out = {
        "kind": schedule.kind,
        "k": schedule.k,
        "n": schedule.n,
        "t0": schedule.t0,
        "v": schedule.v,
        "omega": schedule.omega,
        "kappa": schedule.kappa,
        "t_alpha": {str(a): entropic_mod.solve_t_alpha(schedule, a) for a in args.alphas},
        "asymptotic": entropic_mod.asymptotic_t0(args.kind, args.k, args.n),
    }
    harness.write_output(json.dumps(out, indent=2) + "\n", args.out)
    return 0


def _alpha_times(args, schedule):
    if args.times.startswith("auto:alphas="):
        lo, hi = args.times.removeprefix("auto:alphas=").split("..")
        alphas = [float(a) for a in range(int(lo), int(hi) + 1)]
    else:
        alphas = [None] * len(_floats(args.times))
        return list(_floats(args.times)), alphas
    return [entropic_mod.solve_t_alpha(schedule, a) for a in alphas], alphas


def cmd_tvcurve(args) -> int:
    spec = parse_group(args.group)
    kind = "poisson" if args.directed else "srw"
    schedule = entropic_mod.solve_t0(kind, args.k, spec.n)
    times, alphas = _alpha_times(args, schedule)
    gens = sample_generators(spec, args.k, args.seed)
    curve = spectral.tv_curve(spec, gens, args.directed, times)
    rows = [
        {"t": t, "alpha": "" if a is None else a, "tv": tv, "l2": l2}
        for (t, tv, l2), a in zip(curve, alphas)
    ]
    harness.write_output(harness.rows_to_csv(rows), args.out)
    return 0


def cmd_dalpha(args) -> int:
    spec = parse_group(args.group)
    kind = "poisson" if args.directed else "srw"
    schedule = entropic_mod.solve_t0(kind, args.k, spec.n)
    result = mixingstats.estimate_D_alpha(
        spec, args.k, schedule, args.alpha, args.trials, args.seed, omega=args.omega
    )
    harness.write_output(json.dumps(result, indent=2) + "\n", args.out)
    return 0


def _bool(text: str) -> bool:
    if text.lower() in ("true", "1", "yes"):
        return True
    if text.lower() in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected boolean, got {text!r}")


def cmd_typdist(args) -> int:
    config = harness.ExperimentConfig(
        group=args.group, k=args.k, directed=args.directed,
        betas=_floats(args.betas), p=math.inf if args.p == "inf" else float(args.p),
        trials=args.trials, seed=args.seed, out=args.out,
    )
    rows = harness.run_typdist_experiment(config)
    harness.write_output(harness.rows_to_csv(rows, config), args.out)
    return 0


def cmd_cutoff_profile(args) -> int:
    config = harness.ExperimentConfig(
        group=args.group, k=args.k, directed=args.directed, alphas=_floats(args.alphas),
        trials=args.trials, seed=args.seed, out=args.out,
    )
    rows = harness.run_cutoff_profile(config)
    harness.write_output(harness.rows_to_csv(rows, config), args.out)
    return 0


def cmd_lower_bound_audit(args) -> int:
    config = harness.ExperimentConfig(
        group=args.group, k=args.k, directed=args.directed, alphas=_floats(args.alphas),
        trials=args.trials, seed=args.seed, omega=args.omega, lb_samples=args.lb_samples,
        out=args.out,
    )
    rows = harness.run_lower_bound_audit(config)
    harness.write_output(harness.rows_to_csv(rows, config), args.out)
    return 0


def cmd_validate(args) -> int:
    report = harness.run_validation_suite()
    for row in report:
        status = "PASS" if row["ok"] else "FAIL"
        line = f"{status}  {row['check']}"
        if row["detail"]:
            line += f"  ({row['detail']})"
        print(line)
    failed = sum(1 for r in report if not r["ok"])
    print(f"{len(report) - failed}/{len(report)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayleymix")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropic", help="solve entropic/cutoff times")
    p.add_argument("--kind", choices=["poisson", "srw"])
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--alphas", type=_floats, default=(-2.0, -1.0, 0.0, 1.0, 2.0))
    _add_common(p)
    p.set_defaults(fn=cmd_entropic, subparser=p)

    p = sub.add_parser("tvcurve", help="exact TV/L2 curve for one sampled Z")
    p.add_argument("--group")
    p.add_argument("--k", type=int)
    p.add_argument("--directed", type=_bool, default=False)
    p.add_argument("--times", default="auto:alphas=-2..2")
    _add_common(p)
    p.set_defaults(fn=cmd_tvcurve, subparser=p)

    p = sub.add_parser("dalpha", help="modified-L2 quantity estimator")
    p.add_argument("--group")
    p.add_argument("--k", type=int)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--directed", type=_bool, default=False)
    p.add_argument("--trials", type=int, default=200_000, help="accepted pairs")
    p.add_argument("--omega", type=float, default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_dalpha, subparser=p)

    p = sub.add_parser("typdist", help="typical-distance experiment")
    p.add_argument("--group")
    p.add_argument("--k", type=int)
    p.add_argument("--p", default="1")
    p.add_argument("--betas", default="0.1,0.5,0.9")
    p.add_argument("--directed", type=_bool, default=False)
    p.add_argument("--trials", type=int, default=20)
    _add_common(p)
    p.set_defaults(fn=cmd_typdist, subparser=p)

    p = sub.add_parser("cutoff-profile", help="exact TV at cutoff times over trials")
    p.add_argument("--group")
    p.add_argument("--k", type=int)
    p.add_argument("--alphas", default="-2,-1,0,1,2")
    p.add_argument("--directed", type=_bool, default=False)
    p.add_argument("--trials", type=int, default=32)
    _add_common(p)
    p.set_defaults(fn=cmd_cutoff_profile, subparser=p)

    p = sub.add_parser("lower-bound-audit", help="TV lower-bound audit per trial")
    p.add_argument("--group")
    p.add_argument("--k", type=int)
    p.add_argument("--alphas", default="-2,-1,0,1,2")
    p.add_argument("--directed", type=_bool, default=False)
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--lb-samples", dest="lb_samples", type=int, default=100_000)
    _add_common(p)
    p.set_defaults(fn=cmd_lower_bound_audit, subparser=p)

    p = sub.add_parser("validate", help="run the bundled invariant checks")
    _add_common(p)
    p.set_defaults(fn=cmd_validate, subparser=p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args = _merge_config(args)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
