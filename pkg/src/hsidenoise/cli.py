"""Command line pipeline: simulate -> denoise -> evaluate, plus band export.

Every command echoes its fully resolved configuration, so a run can be
reproduced from its own output.  Exit codes: 0 success, 1 usage problems,
2 file problems, 3 numeric failures.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass, replace

from .errors import CubeFormatError, MetricError, NumericError
from .io import read_cube, write_cube, write_pgm, write_text
from .metrics import evaluate
from .noise import NoiseSpec, apply_noise, case_spec
from .solver import SolverParams, solve


class UsageError(Exception):
    """Bad flags or arguments; maps to exit code 1."""


@dataclass
class RunConfig:
    """Fully resolved configuration echoed into reports and to stdout."""

    command: str
    input: str
    output: str
    preset: str | None = None
    params: dict | None = None
    noise: dict | None = None
    seed: int | None = None

    def to_json(self):
        return json.dumps(asdict(self), indent=2)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# solver fields exposed as denoise overrides, flag name -> attribute
_PARAM_FLAGS = {
    "--lambda-tv": "lambda_tv",
    "--lambda-s": "lambda_s",
    "--lambda-n": "lambda_n",
    "--lambda-g": "lambda_g",
    "--beta1": "beta1",
    "--beta2": "beta2",
    "--beta3": "beta3",
    "--beta4": "beta4",
    "--eps": "eps",
    "--rho": "rho",
}


def build_parser():
    parser = _Parser(prog="hsidenoise", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="degrade a clean cube with a canonical noise case")
    sim.add_argument("--input", required=True, help="clean cube (NPY)")
    sim.add_argument("--output", required=True, help="noisy cube to write (NPY)")
    sim.add_argument("--case", type=int, choices=(1, 2, 3, 4), help="canonical noise case")
    sim.add_argument("--spec", help="JSON noise spec; overrides --case")
    sim.add_argument("--seed", type=int, help="RNG seed (default 0, or the spec file's)")
    sim.set_defaults(func=cmd_simulate)

    den = sub.add_parser("denoise", help="run the solver on a noisy cube")
    den.add_argument("--input", required=True, help="noisy cube (NPY)")
    den.add_argument("--output", required=True, help="denoised cube to write (NPY)")
    den.add_argument(
        "--preset",
        choices=("simulated", "real"),
        default="simulated",
        help="parameter preset to start from",
    )
    for flag, attr in _PARAM_FLAGS.items():
        den.add_argument(flag, dest=attr, type=float, help=f"override {attr}")
    den.add_argument("--rank", type=int, help="override the factor rank")
    den.add_argument("--max-iter", dest="max_iter", type=int, help="override the sweep cap")
    den.add_argument(
        "--emit-components",
        action="store_true",
        help="also write the sparse and Gaussian components next to the output",
    )
    den.add_argument("--report", help="write the solve report as JSON here")
    den.set_defaults(func=cmd_denoise)

    ev = sub.add_parser("evaluate", help="score a test cube against a reference")
    ev.add_argument("--ref", required=True, help="reference cube (NPY)")
    ev.add_argument("--test", required=True, help="cube under test (NPY)")
    ev.add_argument("--csv", help="write per-band metrics as CSV here")
    ev.add_argument("--json", help="write the metrics report as JSON here")
    ev.add_argument("--peak", type=float, default=1.0, help="PSNR peak value (default 1.0)")
    ev.set_defaults(func=cmd_evaluate)

    exp = sub.add_parser("export-band", help="export one band as an 8-bit PGM image")
    exp.add_argument("--input", required=True, help="cube (NPY)")
    exp.add_argument("--band", required=True, type=int, help="band number, 1-based")
    exp.add_argument("--output", required=True, help="PGM file to write")
    exp.add_argument(
        "--range",
        nargs=2,
        type=float,
        default=(0.0, 1.0),
        metavar=("LO", "HI"),
        help="values mapped linearly onto [0, 255], clamped (default 0 1)",
    )
    exp.set_defaults(func=cmd_export_band)

    return parser


def _sidecar_path(output):
    stem = output[: -len(".npy")] if output.endswith(".npy") else output
    return stem + ".json"


def cmd_simulate(args):
    cube = read_cube(args.input)
    if args.spec is not None:
        with open(args.spec, "r", encoding="utf-8") as handle:
            spec = NoiseSpec.from_json(handle.read())
        if args.seed is not None:
            spec = replace(spec, seed=args.seed)
    elif args.case is not None:
        spec = case_spec(args.case, cube.shape[0], seed=args.seed if args.seed is not None else 0)
    else:
        raise UsageError("simulate needs --case or --spec")
    noisy = apply_noise(cube, spec)
    write_cube(noisy, args.output)
    write_text(_sidecar_path(args.output), spec.to_json() + "\n")
    config = RunConfig(
        command="simulate",
        input=args.input,
        output=args.output,
        noise=asdict(spec),
        seed=spec.seed,
    )
    print(config.to_json())
    return 0


def _resolve_params(args):
    base = SolverParams.simulated() if args.preset == "simulated" else SolverParams.real()
    overrides = {}
    for attr in list(_PARAM_FLAGS.values()) + ["rank", "max_iter"]:
        value = getattr(args, attr)
        if value is not None:
            overrides[attr] = value
    params = base
    if overrides:
        try:
            params = replace(base, **overrides)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    preset = args.preset if params == base else "custom"
    return params, preset


def cmd_denoise(args):
    cube = read_cube(args.input)
    params, preset = _resolve_params(args)
    config = RunConfig(
        command="denoise",
        input=args.input,
        output=args.output,
        preset=preset,
        params=asdict(params),
    )
    print(config.to_json())
    x, s, n, report = solve(cube, params)
    write_cube(x, args.output)
    if args.emit_components:
        stem = args.output[: -len(".npy")] if args.output.endswith(".npy") else args.output
        write_cube(s, stem + ".sparse.npy")
        write_cube(n, stem + ".gaussian.npy")
    if args.report:
        document = {"config": asdict(config), "report": report.to_dict()}
        write_text(args.report, json.dumps(document, indent=2) + "\n")
    print(
        f"done: {report.iterations} sweeps, "
        f"{'converged' if report.converged else 'sweep cap reached'}, "
        f"{report.wall_time_s:.2f}s"
    )
    return 0


def cmd_evaluate(args):
    ref = read_cube(args.ref)
    test = read_cube(args.test)
    report = evaluate(ref, test, peak=args.peak)
    if args.csv:
        write_text(args.csv, report.to_csv())
    if args.json:
        write_text(args.json, report.to_json() + "\n")
    print(report.summary_line())
    return 0


def cmd_export_band(args):
    cube = read_cube(args.input)
    if not 1 <= args.band <= cube.shape[0]:
        raise UsageError(f"band {args.band} outside [1, {cube.shape[0]}]")
    lo, hi = args.range
    if not hi > lo:
        raise UsageError(f"--range needs LO < HI, got {lo} {hi}")
    write_pgm(cube[args.band - 1], args.output, lo=lo, hi=hi)
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CubeFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericError, MetricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
