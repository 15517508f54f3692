"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 config error,
3 internal/module error.
"""
import argparse
import json
import sys

from .errors import ConfigError, FrameMeasuresError
from .report import DEFAULT_TOLERANCES, ExperimentConfig, emit_csv, report_csv_text
from .suites import GAUSSIAN_CHECKS, run


def _parse_vector(text):
    """Inline JSON array or a path to a JSON file holding one."""
    if text is None:
        return None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        try:
            with open(text) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"--x/--y value {text!r} is neither JSON nor a readable file: {exc}")
    if not isinstance(doc, list):
        raise ConfigError(f"vector must be a JSON array, got {type(doc).__name__}")
    return doc


def _parse_tolerances(pairs):
    out = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise ConfigError(f"--tolerance takes NAME=VALUE, got {pair!r}")
        name, _, value = pair.partition("=")
        if name not in DEFAULT_TOLERANCES:
            raise ConfigError(
                f"unknown tolerance {name!r}; known: {sorted(DEFAULT_TOLERANCES)}"
            )
        try:
            out[name] = float(value)
        except ValueError:
            raise ConfigError(f"tolerance {name!r} needs a numeric value, got {value!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framemeasures",
        description="Frame-induced measures with seeded Monte-Carlo verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples_default=100_000, dim_default=32):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=samples_default)
        p.add_argument("--dim", type=int, default=dim_default)
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument(
            "--tolerance", action="append", metavar="NAME=VALUE",
            help=f"override a tolerance; known: {sorted(DEFAULT_TOLERANCES)}",
        )

    p = sub.add_parser("frames", help="frame bounds, Gramian, dual checks")
    p.add_argument("frame", help="frame JSON path")
    common(p)

    p = sub.add_parser("wasserstein", help="exact W2 distance between two measures")
    p.add_argument("mu", help="measure JSON path")
    p.add_argument("nu", help="measure JSON path")
    common(p)

    p = sub.add_parser("decay", help="coordinate decay diagnostic of a measure")
    p.add_argument("mu", help="measure JSON path")
    p.add_argument("--n-max", type=int, default=64)
    common(p)

    p = sub.add_parser("markov", help="frame-induced Markov chain and path sampling")
    p.add_argument("frame", help="frame JSON path")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--start-index", type=int, default=0)
    group.add_argument("--start-vector", help="inline JSON vector or file path")
    p.add_argument("--horizon", type=int, default=2)
    p.add_argument("--paths", type=int, default=1000)
    p.add_argument("--paths-csv", help="write one CSV row per sampled path here")
    common(p)

    p = sub.add_parser("dpp", help="determinantal measure from a frame or kernel")
    p.add_argument("input", help='frame JSON or kernel JSON ({"k": [[...]]})')
    p.add_argument("--bruteforce", action="store_true",
                   help="enumerate the exact subset distribution (n <= 20)")
    p.add_argument("--draws-csv", help="write one CSV row per draw here")
    common(p)

    p = sub.add_parser("gaussian", help="white-noise identity checks")
    p.add_argument("--checks", default=",".join(GAUSSIAN_CHECKS),
                   help=f"comma list from {GAUSSIAN_CHECKS}")
    common(p)

    p = sub.add_parser("translate", help="translated-measure identity checks")
    p.add_argument("--x", help="inline JSON vector or file path")
    p.add_argument("--y", help="inline JSON vector or file path")
    common(p)

    p = sub.add_parser("kl", help="Karhunen-Loeve expansion for a Parseval frame")
    p.add_argument("frame", help="frame JSON path")
    p.add_argument("--x", help="inline JSON vector or file path")
    common(p)

    p = sub.add_parser("verify-all", help="run every suite on built-in inputs")
    common(p)
    return parser


def config_from_args(args) -> ExperimentConfig:
    inputs = []
    options = {}
    if args.command == "frames":
        inputs = [args.frame]
    elif args.command == "wasserstein":
        inputs = [args.mu, args.nu]
    elif args.command == "decay":
        inputs = [args.mu]
        options["n_max"] = args.n_max
    elif args.command == "markov":
        inputs = [args.frame]
        options.update(
            start_index=args.start_index,
            start_vector=_parse_vector(args.start_vector),
            horizon=args.horizon,
            paths=args.paths,
            paths_csv=args.paths_csv,
        )
    elif args.command == "dpp":
        inputs = [args.input]
        options.update(bruteforce=args.bruteforce, draws_csv=args.draws_csv)
    elif args.command == "gaussian":
        options["checks"] = tuple(c for c in args.checks.split(",") if c)
    elif args.command == "translate":
        options.update(x=_parse_vector(args.x), y=_parse_vector(args.y))
    elif args.command == "kl":
        inputs = [args.frame]
        options["x"] = _parse_vector(args.x)
    return ExperimentConfig(
        command=args.command,
        seed=args.seed,
        samples=args.samples,
        dim=args.dim,
        tolerances=_parse_tolerances(args.tolerance),
        inputs=tuple(inputs),
        options=options,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        report = run(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"config error: malformed JSON: {exc}", file=sys.stderr)
        return 2
    except FrameMeasuresError as exc:
        print(f"{args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - defensive
        print(f"{args.command}: internal error: {exc}", file=sys.stderr)
        return 3

    if args.out:
        if args.format == "csv":
            emit_csv(report, args.out)
        else:
            with open(args.out, "w") as fh:
                fh.write(report.to_json() + "\n")
    else:
        if args.format == "csv":
            sys.stdout.write(report_csv_text(report))
        else:
            print(report.to_json())
    return 0 if report.overall_pass else 1


if __name__ == "__main__":
    sys.exit(main())
