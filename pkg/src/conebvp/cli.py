"""Command line entry point.

Subcommands::

    conebvp list                     show the built-in problem catalogue
    conebvp example 6.5 [flags]      run the full pipeline on a catalogue entry
    conebvp run problem.json [flags] run the pipeline on a user problem

Each run writes an append-only JSON report named <id>-<timestamp>.json
into the output directory, plus one CSV per solution (header "t,u") when
the format includes csv or --plot-data is set.  Exit status is 0 only
when every emitted verification is accepted.  The environment variable
CONE_BVP_PANELS overrides the default Simpson panel count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .errors import ConeBVPError, ConfigError, UnknownExampleError
from .hypotheses import LimitEstimate, Witness
from .pipeline import PipelineOptions, result_to_dict, run_pipeline
from .problem import load_problem_config
from .registry import example_ids, get_example

_ENV_PANELS = "CONE_BVP_PANELS"


def _parse_limit(text: str) -> LimitEstimate:
    lowered = text.strip().lower()
    if lowered in ("zero", "0"):
        return LimitEstimate.zero()
    if lowered in ("inf", "infinite", "infinity"):
        return LimitEstimate.infinite()
    try:
        return LimitEstimate.finite(float(text))
    except (ValueError, ConeBVPError) as exc:
        raise ConfigError(
            f"limit override must be 'zero', 'inf', or a nonnegative number, got {text!r}"
        ) from exc


def _add_run_flags(cmd):
    cmd.add_argument("--panels", type=int, default=None,
                     help="Simpson panel count (default 1024, env CONE_BVP_PANELS)")
    cmd.add_argument("--scan", type=int, default=64,
                     help="uniform scan points for the shooting search")
    cmd.add_argument("--cmax", type=float, default=None,
                     help="largest shooting height (default 10x witness radius, else 100)")
    cmd.add_argument("--tol", type=float, default=1e-9,
                     help="relative root tolerance on the boundary defect")
    cmd.add_argument("--rho1", type=float, default=None)
    cmd.add_argument("--m1", type=float, default=None)
    cmd.add_argument("--rho2", type=float, default=None)
    cmd.add_argument("--m2", type=float, default=None)
    cmd.add_argument("--theta1", type=float, default=None)
    cmd.add_argument("--theta2", type=float, default=None)
    cmd.add_argument("--f0", type=str, default=None,
                     help="override for lim f(u)/u at 0+: zero | inf | number")
    cmd.add_argument("--finf", type=str, default=None,
                     help="override for lim f(u)/u at infinity: zero | inf | number")
    cmd.add_argument("--out", type=Path, default=Path("reports"))
    cmd.add_argument("--format", choices=("json", "csv", "both"), default="json")
    cmd.add_argument("--plot-data", action="store_true",
                     help="emit t,u columns for each solution even in json mode")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conebvp",
        description="Analyze and solve the three-point integral BVP "
        "u'' + a(t) f(u) = 0, u'(0) = 0, u(T) = alpha int_0^eta u.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list the built-in problem catalogue")

    example_cmd = sub.add_parser("example", help="run a built-in problem")
    example_cmd.add_argument("example_id", metavar="ID")
    _add_run_flags(example_cmd)

    run_cmd = sub.add_parser("run", help="run a problem from a JSON config")
    run_cmd.add_argument("config", type=Path)
    _add_run_flags(run_cmd)

    return parser


def _panels(args) -> int:
    if args.panels is not None:
        return args.panels
    env = os.environ.get(_ENV_PANELS)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError(f"{_ENV_PANELS} must be an integer, got {env!r}") from exc
    return PipelineOptions().panels


def _witness_from(args, base: Witness | None) -> Witness | None:
    base = base or Witness()
    fields = {
        "rho1": base.rho1, "m1": base.m1,
        "rho2": base.rho2, "m2": base.m2,
        "theta1": base.theta1, "theta2": base.theta2,
    }
    touched = False
    for name in fields:
        value = getattr(args, name)
        if value is not None:
            fields[name] = value
            touched = True
    if not touched and base == Witness():
        return base
    return Witness(**fields)


def _emit(result, example_id, out_dir: Path, fmt: str, plot_data: bool):
    out_dir.mkdir(parents=True, exist_ok=True)
    stamp = time.strftime("%Y%m%dT%H%M%S")
    base = f"{example_id}-{stamp}"
    k = 0
    while (out_dir / f"{base}.json").exists():
        k += 1
        base = f"{example_id}-{stamp}-{k}"

    payload = result_to_dict(result, example_id=example_id)
    written = []
    csv_files = []
    if fmt in ("csv", "both") or plot_data:
        for idx, sol in enumerate(result.solutions, start=1):
            csv_path = out_dir / f"{base}-sol{idx}.csv"
            t = sol.u.grid()
            with csv_path.open("w", encoding="utf-8") as handle:
                handle.write("t,u\n")
                for ti, ui in zip(t, sol.u.values):
                    handle.write(f"{ti!r},{ui!r}\n")
            written.append(csv_path)
            csv_files.append(csv_path.name)
    payload["files"] = {"csv": csv_files}
    if fmt in ("json", "both") or fmt == "csv":
        # the JSON report is always written; csv-only runs still need the
        # machine-readable verdict next to the dumps
        json_path = out_dir / f"{base}.json"
        with json_path.open("w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")
        written.insert(0, json_path)
    return payload, written


def _summarize(payload) -> str:
    consts = payload["constants"]
    lines = [
        f"problem: {payload['problem']}",
        "constants: gamma={gamma:.12g} lambda1={lambda1:.12g} lambda2={lambda2:.12g}".format(
            **consts
        ),
        f"limits: f0={payload['limits']['f0']['kind']} finf={payload['limits']['finf']['kind']}",
        f"theorems: {', '.join(payload['theorems']) or 'none'}",
    ]
    for sol in payload["solutions"]:
        lines.append(
            "solution: norm={norm:.9g} residual={residual_ode:.3e} "
            "bc={bc_defect:.3e} fixedpoint={fixedpoint_defect:.3e} "
            "accepted={accepted}".format(**sol)
        )
    lines.append(f"verdict: {payload['verdict']['status']}")
    return "\n".join(lines)


def run_example(example_id: str, args) -> int:
    spec = get_example(example_id)
    problem = spec.build_problem()
    witness = _witness_from(args, spec.witness)
    f0 = _parse_limit(args.f0) if args.f0 else spec.f0_override
    finf = _parse_limit(args.finf) if args.finf else spec.finf_override
    options = PipelineOptions(
        panels=_panels(args), n_scan=args.scan, c_max=args.cmax, tol_root=args.tol
    )
    result = run_pipeline(problem, witness=witness, f0_override=f0,
                          finf_override=finf, options=options)
    payload, written = _emit(result, example_id, args.out, args.format, args.plot_data)
    print(_summarize(payload))
    for path in written:
        print(f"wrote {path}")
    return 0 if result.all_accepted else 1


def run_config(config_path: Path, args) -> int:
    try:
        raw = config_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {config_path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON (line {exc.lineno}): {exc.msg}") from exc

    problem = load_problem_config(data)
    base = Witness(
        rho1=data.get("rho1"), m1=data.get("m1"),
        rho2=data.get("rho2"), m2=data.get("m2"),
        theta1=data.get("theta1", 1.0), theta2=data.get("theta2", 1.0),
    )
    witness = _witness_from(args, base)
    f0 = _parse_limit(args.f0) if args.f0 else (
        _parse_limit(str(data["f0"])) if "f0" in data else None
    )
    finf = _parse_limit(args.finf) if args.finf else (
        _parse_limit(str(data["finf"])) if "finf" in data else None
    )
    options = PipelineOptions(
        panels=_panels(args), n_scan=args.scan, c_max=args.cmax, tol_root=args.tol
    )
    result = run_pipeline(problem, witness=witness, f0_override=f0,
                          finf_override=finf, options=options)
    payload, written = _emit(result, config_path.stem, args.out, args.format,
                             args.plot_data)
    print(_summarize(payload))
    for path in written:
        print(f"wrote {path}")
    return 0 if result.all_accepted else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list":
            for example_id in example_ids():
                spec = get_example(example_id)
                print(f"{example_id}: {spec.title}")
            return 0
        if args.command == "example":
            return run_example(args.example_id, args)
        return run_config(args.config, args)
    except UnknownExampleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        where = f" (field {exc.field!r})" if exc.field else ""
        print(f"config error{where}: {exc}", file=sys.stderr)
        return 2
    except ConeBVPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
