"""Command-line driver.

Subcommands
-----------
check      run the invariant suite, exit 0 iff every check passes
surface    sweep one fidelity surface at fixed r, write CSV
fmax       maximum fidelity versus r over the default 21-point grid, CSV
compare    both protocols' F_max curves side by side, verdict on stdout
reproduce  evaluate the bundled reference table, write JSON manifest

Exit codes: 0 success, 1 check or reproduction failure, 2 usage error.
All numeric CSV fields use 17-significant-digit decimals so values
round-trip to the same doubles.
"""

from __future__ import annotations

import argparse
import sys

from .checks import FAULT_NAMES, run_checks
from .reproduce import build_manifest, manifest_json, manifest_lines
from .sweep import (
    DEFAULT_RESOLUTION,
    compare_protocols,
    default_grid,
    default_r_values,
    fmax_curve,
    sweep,
)

_FMT = "%.17g"


def _fmt(value: float) -> str:
    return _FMT % value


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _add_common(sub, protocol=True, channel=True, mode=True, measure=True):
    if protocol:
        sub.add_argument("--protocol", required=True, choices=("I", "II"))
    if channel:
        sub.add_argument(
            "--channel",
            required=True,
            type=str.lower,
            choices=("adc", "bfc", "pfc"),
        )
    if mode:
        sub.add_argument(
            "--mode", choices=("paper", "physical"), default="physical"
        )
    if measure:
        sub.add_argument("--measure", choices=("haar", "polar"), default="polar")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wmteleport",
        description="weak-measurement-protected teleportation sweeps",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_check = subs.add_parser("check", help="run the invariant suite")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--inject-fault", choices=FAULT_NAMES, default=None)

    p_surface = subs.add_parser("surface", help="fidelity surface at fixed r")
    _add_common(p_surface)
    p_surface.add_argument("--r", type=float, default=0.5)
    p_surface.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p_surface.add_argument("--out", required=True)

    p_fmax = subs.add_parser("fmax", help="maximum fidelity versus r")
    _add_common(p_fmax)
    p_fmax.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p_fmax.add_argument("--out", required=True)

    p_compare = subs.add_parser(
        "compare", help="protocol I versus protocol II F_max curves"
    )
    _add_common(p_compare, protocol=False)
    p_compare.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p_compare.add_argument("--out", default=None)

    p_repro = subs.add_parser(
        "reproduce", help="evaluate the bundled reference table"
    )
    p_repro.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p_repro.add_argument("--measure", choices=("haar", "polar"), default="polar")
    p_repro.add_argument("--out", required=True)
    p_repro.add_argument(
        "--seed",
        type=int,
        default=None,
        help="fix for byte-identical output (drops the timestamp)",
    )
    return parser


def _cmd_check(args) -> int:
    lines, ok = run_checks(seed=args.seed, inject_fault=args.inject_fault)
    print("\n".join(lines))
    return 0 if ok else 1


def _cmd_surface(args, parser) -> int:
    if args.resolution < 1:
        parser.error("--resolution must be at least 1")
    if not 0.0 <= args.r <= 1.0:
        parser.error("--r must lie in [0, 1]")
    grid = default_grid(args.protocol, [args.r], args.resolution, args.mode)
    result = sweep(grid, args.channel, args.measure)
    rows = (
        (
            grid.axis1[i1],
            grid.axis2[i2],
            grid.r_values[ir],
            result.fidelity[i1, i2, ir],
            result.baseline[ir],
        )
        for i1 in range(grid.axis1.size)
        for i2 in range(grid.axis2.size)
        for ir in range(grid.r_values.size)
    )
    _write_text(args.out, _csv("axis1,axis2,r,fidelity,baseline", rows))
    print(f"wrote {args.out}")
    return 0


def _cmd_fmax(args, parser) -> int:
    if args.resolution < 2:
        parser.error("--resolution must be at least 2")
    points = fmax_curve(
        args.protocol,
        args.channel,
        r_values=default_r_values(),
        resolution=args.resolution,
        mode=args.mode,
        measure=args.measure,
    )
    rows = ((p.r, p.fmax, p.param1, p.param2, p.baseline) for p in points)
    _write_text(args.out, _csv("r,fmax,param1,param2,baseline", rows))
    print(f"wrote {args.out}")
    return 0


def _cmd_compare(args, parser) -> int:
    if args.resolution < 2:
        parser.error("--resolution must be at least 2")
    comparison = compare_protocols(
        args.channel,
        r_values=default_r_values(),
        resolution=args.resolution,
        mode=args.mode,
        measure=args.measure,
    )
    if args.out is not None:
        _write_text(args.out, _csv("r,baseline,fmax_I,fmax_II", comparison.rows))
        print(f"wrote {args.out}")
    print(comparison.verdict_text)
    return 0


def _cmd_reproduce(args, parser) -> int:
    if args.resolution < 2:
        parser.error("--resolution must be at least 2")
    manifest = build_manifest(
        resolution=args.resolution,
        measure=args.measure,
        timestamp=args.seed is None,
    )
    _write_text(args.out, manifest_json(manifest))
    print("\n".join(manifest_lines(manifest)))
    print(f"wrote {args.out}")
    return 0 if manifest["all_passed"] else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "surface":
            return _cmd_surface(args, parser)
        if args.command == "fmax":
            return _cmd_fmax(args, parser)
        if args.command == "compare":
            return _cmd_compare(args, parser)
        return _cmd_reproduce(args, parser)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
