"""Command line entry point: ``pipeclimber simulate|radii|validate|slip``."""

import argparse
import math
import sys
from pathlib import Path

from . import netio
from .analysis import (
    DISTANCE_KEYS, DriveMode, drive_slip, totals_as_distances, validate_against_fixtures,
)
from .bend import effective_radii
from .model import DEFAULT_PARAMS, PipeClimberError
from .traversal import DEFAULT_SAMPLE_DT, simulate

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _read_network(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _Usage(f"{path}: cannot read network file: {exc.strerror or exc}") from None
    try:
        return netio.parse_network(text)
    except netio.ParseError as exc:
        raise _Usage(f"{path}:{exc.line}:{exc.column}: error: {exc.message}") from None


def _summary(totals, out):
    print(f"T_total = {totals.T_total:10.2f} s", file=out)
    for key, value in totals_as_distances(totals).items():
        print(f"{key:<7} = {value:10.2f} mm", file=out)


def cmd_simulate(args):
    network = _read_network(args.network)
    if args.alpha is not None:
        network = network.with_orientation(math.radians(args.alpha))
    timeline = simulate(network, args.rpm, DEFAULT_PARAMS, args.dt)
    csv = netio.emit_timeline_csv(timeline)
    if args.out == "-":
        sys.stdout.write(csv)
        info = sys.stderr
    else:
        Path(args.out).write_text(csv)
        info = sys.stdout
    _summary(timeline.totals, info)
    return EXIT_OK


def cmd_radii(args):
    radii = effective_radii(math.radians(args.alpha), args.r, args.R)
    for k, rho in enumerate(radii.rho_mm, start=1):
        print(f"t{k}: {rho:.2f} mm")
    return EXIT_OK


def cmd_validate(args):
    if args.fixtures is None:
        text = netio.reference_fixtures_text()
        label = "built-in fixtures"
    else:
        try:
            text = Path(args.fixtures).read_text()
        except OSError as exc:
            raise _Usage(f"{args.fixtures}: cannot read fixtures: {exc.strerror or exc}") from None
        label = args.fixtures
    try:
        fixtures = netio.load_fixtures(text)
    except (ValueError, KeyError) as exc:
        raise _Usage(f"{label}: bad fixture file: {exc}") from None

    print(f"{'alpha':>6} {'entry':<5} {'theory mm':>10} {'measured':>10} {'error':>8} "
          f"{'reported':>9}  |error| < {fixtures.least_count_mm:g}")
    ok = True
    for case in fixtures.cases:
        network = fixtures.network.with_orientation(math.radians(case.alpha_deg))
        totals = simulate(network, fixtures.input_rpm, DEFAULT_PARAMS).totals
        report = validate_against_fixtures(totals_as_distances(totals), case.experimental,
                                           fixtures.least_count_mm)
        for key in DISTANCE_KEYS:
            e = report[key]
            reported = case.reported_error.get(key)
            reported = f"{reported:+9.2f}" if reported is not None else f"{'-':>9}"
            print(f"{case.alpha_deg:6.1f} {key:<5} {e.theoretical_mm:10.2f} {e.fixture_mm:10.2f} "
                  f"{e.error_mm:+8.2f} {reported}  {'Yes' if e.passes else 'No'}")
        ok &= report.all_pass
    print("all entries within least count" if ok else "VALIDATION FAILED")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_slip(args):
    network = _read_network(args.network)
    mode = DriveMode.RIGID if args.mode == "rigid" else DriveMode.THREE_OOD
    report = drive_slip(network, mode, math.radians(args.alpha), args.rpm, DEFAULT_PARAMS)
    print(f"drive mode: {report.drive_mode.value}")
    print(f"{'segment':>7} {'t1 mm':>10} {'t2 mm':>10} {'t3 mm':>10}")
    for i, row in enumerate(report.per_segment):
        print(f"{i:>7} " + " ".join(f"{s:10.2f}" for s in row))
    print(f"{'total':>7} " + " ".join(f"{s:10.2f}" for s in report.slip_mm))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pipeclimber",
        description="Kinematics of a three-tracked in-pipe robot with a three-output open differential.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="traverse a network and write the timeline CSV")
    p.add_argument("--network", required=True, help="route description file")
    p.add_argument("--alpha", type=float, help="robot roll in degrees for every bend")
    p.add_argument("--rpm", type=float, default=DEFAULT_PARAMS.motor_speed_rpm,
                   help="motor speed entering the differential (default %(default)s)")
    p.add_argument("--dt", type=float, default=DEFAULT_SAMPLE_DT, help="sample period in s")
    p.add_argument("--out", default="-", help="CSV destination, '-' for stdout")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("radii", help="effective track radii inside a bend")
    p.add_argument("--alpha", type=float, required=True, help="robot roll in degrees")
    p.add_argument("--r", type=float, default=138.0, help="pipe radius in mm")
    p.add_argument("--R", type=float, default=419.0, help="bend radius in mm")
    p.set_defaults(func=cmd_radii)

    p = sub.add_parser("validate", help="compare theory with the measured distances")
    p.add_argument("--fixtures", help="fixture JSON file (default: built-in test-run data)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("slip", help="per-track slip for a drive mode")
    p.add_argument("--network", required=True, help="route description file")
    p.add_argument("--alpha", type=float, required=True, help="robot roll in degrees")
    p.add_argument("--mode", choices=("rigid", "ood"), required=True)
    p.add_argument("--rpm", type=float, default=DEFAULT_PARAMS.motor_speed_rpm)
    p.set_defaults(func=cmd_slip)
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except PipeClimberError as exc:
        print(f"pipeclimber {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
