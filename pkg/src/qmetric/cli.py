"""Command-line entry point: ``qmetric {metric,verify,reproduce,random-state,apply-channel}``."""

import argparse
import json
import os
import sys

from . import fidelity, metrics
from .channels import apply_channel
from .errors import BadConfig, QMetricError
from .io import load_channel, load_json, load_state, save_state, state_to_json, write_json_atomic
from .metrics import OptimizerOptions
from .reproduce import REPRODUCERS, reproduce
from .states import random_density
from .suite import FAIL, RunConfig, build_report, run_suite

SEED_ENV = "QMETRIC_SEED"

SCALAR_MEASURES = {
    "F": fidelity.uhlmann_fidelity,
    "G": fidelity.super_fidelity,
    "A": fidelity.metric_a,
    "B": fidelity.metric_b,
    "C": fidelity.metric_c,
    "Dtr": metrics.trace_metric,
}


def fmt(obj):
    """Round every float in a JSON-like structure to 12 significant digits."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: fmt(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [fmt(v) for v in obj]
    if hasattr(obj, "item"):
        return fmt(obj.item())
    return obj


def emit(obj):
    print(json.dumps(fmt(obj), indent=2))


def _optimizer(args):
    return OptimizerOptions(tolerance=args.tolerance, restarts=args.restarts,
                            max_iter=args.max_iter, seed=args.opt_seed)


def cmd_metric(args):
    rho, sigma = load_state(args.state_a), load_state(args.state_b)
    if args.measure in SCALAR_MEASURES:
        emit({"measure": args.measure, "value": SCALAR_MEASURES[args.measure](rho, sigma)})
        return 0
    if args.measure == "Dpg":
        rep = metrics.pg_metric(rho, sigma)
    else:
        rep = metrics.g_metric(rho, sigma, _optimizer(args))
    emit({
        "measure": rep.measure,
        "value": rep.value,
        "witness": state_to_json(rep.witness),
        "diagnostics": rep.diagnostics,
    })
    return 0


def _load_config(args):
    data = load_json(args.config) if args.config else {}
    if not isinstance(data, dict):
        raise BadConfig("config file must hold a JSON object")
    env_seed = os.environ.get(SEED_ENV)
    if env_seed is not None:
        try:
            data["seed"] = int(env_seed, 0)
        except ValueError:
            raise BadConfig(f"{SEED_ENV}={env_seed!r} is not an integer") from None
    if args.out:
        data["output_path"] = args.out
    return RunConfig.from_dict(data)


def cmd_verify(args):
    config = _load_config(args)

    def progress(v):
        print(f"{v.status:<10} {v.property_id:<48} worst={v.worst_margin:.12g} tol={v.tolerance:g}"
              if v.worst_margin is not None else f"{v.status:<10} {v.property_id}", flush=True)

    verdicts = run_suite(config, progress=None if args.quiet else progress)
    report = build_report(verdicts, config)
    write_json_atomic(config.output_path, fmt(report), indent=2, allow_nan=False)
    s = report["summary"]
    print(f"pass={s['pass']} fail={s['fail']} report_only={s['report_only']} -> {config.output_path}")
    return 1 if any(v.status == FAIL for v in verdicts) else 0


def cmd_reproduce(args):
    seed = int(os.environ.get(SEED_ENV, "0"), 0) if os.environ.get(SEED_ENV) else args.seed
    out = reproduce(args.id, seed=seed, opts=_optimizer(args))
    emit(out)
    return 0


def cmd_random_state(args):
    rank = args.dim if args.rank is None else args.rank
    rho = random_density(args.dim, rank, args.seed)
    save_state(args.out, rho)
    return 0


def cmd_apply_channel(args):
    phi = load_channel(args.channel)
    rho = load_state(args.state)
    out = apply_channel(phi, rho)
    if args.out:
        save_state(args.out, out)
    else:
        emit(state_to_json(out))
    return 0


def _add_optimizer_args(p):
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--opt-seed", type=int, default=0, help="seed for random restarts")


def build_parser():
    parser = argparse.ArgumentParser(prog="qmetric", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metric", help="distance or fidelity between two state files")
    p.add_argument("--measure", required=True, choices=[*SCALAR_MEASURES, "Dpg", "Dg"])
    p.add_argument("state_a")
    p.add_argument("state_b")
    _add_optimizer_args(p)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("verify", help="run the property suite and write a JSON report")
    p.add_argument("--config")
    p.add_argument("--out")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="recompute a worked example")
    p.add_argument("--id", required=True, choices=sorted(REPRODUCERS))
    p.add_argument("--seed", type=int, default=0x5EED)
    _add_optimizer_args(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("random-state", help="write a random density matrix")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rank", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_random_state)

    p = sub.add_parser("apply-channel", help="apply a Kraus channel to a state")
    p.add_argument("--channel", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_apply_channel)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BadConfig as exc:
        print(f"BadConfig: {exc}", file=sys.stderr)
        return 2
    except QMetricError as exc:
        reason = getattr(exc, "reason", type(exc).__name__)
        print(f"{reason}: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
