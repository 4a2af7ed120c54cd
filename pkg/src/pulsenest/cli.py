"""Command-line front end.

Subcommands: ``sequence`` (generate phase files), ``toggling`` (frame
transforms), ``sweep`` (fidelity vs error CSV), ``order`` (infidelity
scaling exponent), ``check`` (invariant suite).  All output is
deterministic byte for byte for a given invocation, and every output file
embeds the resolved configuration.

Exit status: 0 success, 1 usage error, 2 numerical-gate failure,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .analysis import fidelity_sweep, infidelity_order
from .checks import run_all
from .exceptions import (
    EmptyWindowError,
    MalformedPhaseFileError,
    PulsenestError,
    RouteMismatchError,
    StencilConditionError,
)
from .precision import effective_digits, format_scalar
from .sequences import (
    FamilySpec,
    Frame,
    dump_phase_file,
    from_toggling,
    load_phase_file,
    to_toggling,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GATE = 2
EXIT_IO = 3

RECOMMENDED_DIGITS = {2: 30, 3: 60}


class UsageError(ValueError):
    """Command-level argument problem not caught by argparse itself."""


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pulsenest",
        description="Construct nested composite pi-pulse sequences and verify their error suppression.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seq = sub.add_parser("sequence", parents=[], help="generate a phase file for a built-in family")
    p_seq.add_argument("--family", choices=("fn", "symmetric5"), required=True)
    p_seq.add_argument("--n", type=int, default=1, help="nesting depth for the fn family")
    p_seq.add_argument("--sign", choices=("+", "-"), default="+", help="branch of arccos(-1/4)")
    p_seq.add_argument("--branch", choices=("upper", "lower"), default="upper",
                       help="sign branch for symmetric5")
    p_seq.add_argument("--precision", type=int, default=None, metavar="DIGITS")
    p_seq.add_argument("--degrees", action="store_true", help="display phases in degrees (console only)")
    p_seq.add_argument("-o", "--output", required=True, metavar="PATH")
    p_seq.set_defaults(func=cmd_sequence)

    p_tog = sub.add_parser("toggling", help="convert a phase file between applied and toggling frames")
    p_tog.add_argument("--input", required=True, metavar="PATH")
    p_tog.add_argument("--to", choices=("applied", "toggling"), default=None,
                       help="target frame (default: the opposite of the input frame)")
    p_tog.add_argument("--precision", type=int, default=None, metavar="DIGITS")
    p_tog.add_argument("--degrees", action="store_true")
    p_tog.add_argument("-o", "--output", required=True, metavar="PATH")
    p_tog.set_defaults(func=cmd_toggling)

    p_sweep = sub.add_parser("sweep", help="tabulate fidelity against amplitude error")
    p_sweep.add_argument("--input", required=True, metavar="PATH")
    p_sweep.add_argument("--eps-min", type=float, required=True)
    p_sweep.add_argument("--eps-max", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--f", type=float, default=0.0, help="off-resonance fraction")
    p_sweep.add_argument("--precision", type=int, default=None, metavar="DIGITS")
    p_sweep.add_argument("-o", "--output", required=True, metavar="PATH")
    p_sweep.set_defaults(func=cmd_sweep)

    p_order = sub.add_parser("order", help="fit the infidelity scaling exponent")
    src = p_order.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH")
    src.add_argument("--family", choices=("fn", "symmetric5"))
    p_order.add_argument("--n", type=int, default=1)
    p_order.add_argument("--sign", choices=("+", "-"), default="+")
    p_order.add_argument("--branch", choices=("upper", "lower"), default="upper")
    p_order.add_argument("--error-kind", choices=("amplitude", "offresonance"),
                         default="amplitude")
    p_order.add_argument("--precision", type=int, default=None, metavar="DIGITS")
    p_order.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    p_order.set_defaults(func=cmd_order)

    p_check = sub.add_parser("check", help="run the cross-module invariant suite")
    p_check.add_argument("--precision", type=int, default=None, metavar="DIGITS")
    p_check.add_argument("--orders", type=int, nargs="*", default=(),
                         help="also check the fitted order of these fn depths")
    p_check.set_defaults(func=cmd_check)

    return parser


def _echo_config(config: dict):
    for key, value in config.items():
        print(f"# {key}: {value}")


def _precision_label(digits) -> str:
    return "double" if digits is None else str(digits)


def _render_phase(p, degrees: bool, digits) -> str:
    if degrees:
        return format_scalar(math.degrees(float(p)), None)
    return format_scalar(p, digits)


def _print_phases(seq, degrees: bool, digits):
    unit = "deg" if degrees else "rad"
    print(f"{seq.label or '(unlabeled)'}: {len(seq)} phases, frame={seq.frame.value}, unit={unit}")
    for p in seq.phases:
        print(f"  {_render_phase(p, degrees, digits)}")


def cmd_sequence(args) -> int:
    spec = FamilySpec(family=args.family, n=args.n, sign=args.sign, branch=args.branch)
    seq = spec.build(digits=args.precision)
    config = {
        "command": "sequence",
        "family": args.family,
        "n": args.n if args.family == "fn" else None,
        "sign": args.sign if args.family == "fn" else None,
        "branch": args.branch if args.family == "symmetric5" else None,
        "precision": _precision_label(args.precision),
        "output": args.output,
    }
    config = {k: v for k, v in config.items() if v is not None}
    _echo_config(config)
    _print_phases(seq, args.degrees, args.precision)
    dump_phase_file(seq, args.output, digits=args.precision, config=config)
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_toggling(args) -> int:
    seq = load_phase_file(args.input, digits=args.precision)
    target = Frame(args.to) if args.to else (
        Frame.TOGGLING if seq.frame is Frame.APPLIED else Frame.APPLIED
    )
    if target is seq.frame:
        out = seq
    elif target is Frame.TOGGLING:
        out = to_toggling(seq, digits=args.precision)
    else:
        out = from_toggling(seq, digits=args.precision)
    config = {
        "command": "toggling",
        "input": args.input,
        "from_frame": seq.frame.value,
        "to_frame": target.value,
        "precision": _precision_label(args.precision),
        "output": args.output,
    }
    _echo_config(config)
    _print_phases(out, args.degrees, args.precision)
    dump_phase_file(out, args.output, digits=args.precision, config=config)
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    seq = load_phase_file(args.input, digits=args.precision)
    span = args.eps_max - args.eps_min
    eps_grid = [args.eps_min + span * i / (args.steps - 1) for i in range(args.steps)]
    result = fidelity_sweep(seq, eps_grid, f_grid=(args.f,), digits=args.precision)
    config = {
        "command": "sweep",
        "input": args.input,
        "label": result.sequence_label,
        "eps_min": repr(args.eps_min),
        "eps_max": repr(args.eps_max),
        "steps": args.steps,
        "f": repr(args.f),
        "precision": _precision_label(args.precision),
        "output": args.output,
    }
    _echo_config(config)
    digits = args.precision
    lines = [f"# {k}: {v}" for k, v in config.items()]
    lines.append("epsilon,f,fidelity,infidelity")
    for eps, f, fid, infid in result.rows:
        lines.append(
            f"{format_scalar(eps, digits)},{format_scalar(f, digits)},"
            f"{format_scalar(fid, digits)},{format_scalar(infid, digits)}"
        )
    Path(args.output).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(result.rows)} rows to {args.output}")
    return EXIT_OK


def cmd_order(args) -> int:
    if args.input:
        seq = load_phase_file(args.input, digits=args.precision)
        source = {"input": args.input}
    else:
        spec = FamilySpec(family=args.family, n=args.n, sign=args.sign, branch=args.branch)
        seq = spec.build(digits=args.precision)
        source = {"family": args.family, "n": args.n}
        if args.family == "fn":
            recommended = RECOMMENDED_DIGITS.get(min(args.n, 3), None)
            have = effective_digits(args.precision)
            if recommended and have < recommended:
                print(
                    f"warning: precision {have} is below the recommended {recommended} "
                    f"digits for n = {args.n}; the fit window may be empty",
                    file=sys.stderr,
                )
    config = {
        "command": "order",
        **source,
        "error_kind": args.error_kind,
        "precision": _precision_label(args.precision),
    }
    _echo_config(config)
    est = infidelity_order(seq, args.error_kind, digits=args.precision)
    print(f"label: {seq.label or '(unlabeled)'}")
    print(f"exponent: {est.exponent:.6f}")
    print(f"rounded_order: {est.rounded_order}")
    print(f"coefficient: {est.coefficient:.6e}")
    print(f"window: [{est.window[0]:.6e}, {est.window[1]:.6e}]")
    print(f"residual: {est.residual:.6f}")
    print(f"points: {est.npoints}")
    print(f"precision: {est.digits}")
    if args.json:
        payload = est.as_dict()
        payload["label"] = seq.label
        payload["config"] = config
        Path(args.json).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        print(f"wrote {args.json}")
    if est.rounded_order is None:
        print(
            f"residual {est.residual:.4f} exceeds the 0.05 gate; "
            "no integer order asserted (raise precision or inspect the sweep)",
            file=sys.stderr,
        )
        return EXIT_GATE
    return EXIT_OK


def cmd_check(args) -> int:
    config = {
        "command": "check",
        "precision": _precision_label(args.precision),
        "orders": ",".join(str(n) for n in args.orders) or "none",
    }
    _echo_config(config)
    results = run_all(orders=args.orders, digits=args.precision)
    failed = 0
    for res in results:
        print(f"{res.status:4s} {res.name:34s} {res.detail}")
        if not res.passed and not res.skipped:
            failed += 1
    total = len(results)
    skipped = sum(1 for r in results if r.skipped)
    print(f"{total - failed - skipped} passed, {failed} failed, {skipped} skipped")
    return EXIT_OK if failed == 0 else EXIT_GATE


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except MalformedPhaseFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (EmptyWindowError, StencilConditionError, RouteMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GATE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, PulsenestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
