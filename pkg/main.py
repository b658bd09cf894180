import sys
import io

# Ensure UTF-8 output even when redirected or on systems with non-UTF8 defaults
if sys.stdout.encoding != 'utf-8':
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8')
if sys.stderr.encoding != 'utf-8':
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8')

import argparse
import warnings
from typing import List, Optional

from src.core.errors import AntibunchError, ApproximationWarning
from src.core.parsed_data import SWEEP_NAMES
from src.core.validator import ConfigValidator
from src.experiments.presets import PresetLoader
from src.experiments.visibility import dip_report
from src.exporters.csv_exporter import CSVExporter, JSONReportExporter
from src.parsers.parser_factory import parse_file
from src.scans.beam_scan import beam_profile_report
from src.scans.collinear_scan import scan_collinear
from src.scans.offaxis_scan import scan_offaxis
from src.scans.validation import run_validation

# Load environment variables
from dotenv import load_dotenv
load_dotenv()

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def status(message: str):
    """Progress lines go to stderr; stdout carries CSV/JSON only."""
    print(message, file=sys.stderr)


def load_config(path: str):
    """Validates and parses a config file; returns (parsed, warnings) or (None, errors)."""
    status(f"ℹ️  Validating config: {path}")
    result = ConfigValidator.validate(path)
    if not result.is_valid:
        for error in result.errors:
            status(f"❌ {error}")
        return None, result.errors
    for message in result.warnings:
        status(f"⚠️  {message}")
    parsed = parse_file(path)
    status(f"✅ Config parsed ({parsed.units} units)")
    return parsed, result.warnings


def write_output(payload, args, table: bool = True):
    if args.json or not table:
        path = JSONReportExporter().export(payload, output_path=args.out)
    else:
        path = CSVExporter().export(payload, output_path=args.out)
    if path:
        status(f"✅ Output saved to: {path}")


def cmd_scan_collinear(args) -> int:
    parsed, _ = load_config(args.config)
    if parsed is None:
        return EXIT_USAGE
    methods = args.method.split(",") if args.method else None
    table = scan_collinear(parsed, sweep=args.sweep, methods=methods, threads=args.threads)
    status(f"✅ Collinear scan complete: {len(table)} rows")
    write_output(table, args)
    return EXIT_OK


def cmd_scan_offaxis(args) -> int:
    parsed, _ = load_config(args.config)
    if parsed is None:
        return EXIT_USAGE
    table = scan_offaxis(parsed, oracle=args.oracle, threads=args.threads)
    status(f"✅ Off-axis scan complete: {len(table)} rows")
    write_output(table, args)
    return EXIT_OK


def cmd_beam_profile(args) -> int:
    parsed, _ = load_config(args.config)
    if parsed is None:
        return EXIT_USAGE
    report = beam_profile_report(parsed, check=args.check, threads=args.threads)
    for width in report.widths:
        status(f"ℹ️  k={width['k']:g}: angular width {width['numeric']:.4g} (closed form {width['closed_form']:.4g})")
    for check in report.checks:
        marker = "✅" if check["passed"] else "❌"
        status(f"{marker} radial integral k={check['k']:g} r={check['r']:g}: deviation {check['rel_deviation']:.3g}")
    if args.json:
        write_output(report, args, table=False)
    else:
        write_output(report.table, args)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_preset(args) -> int:
    loader = PresetLoader(args.presets_dir)
    names = loader.available() if args.name == "all" else [args.name]
    reports = [dip_report(loader.load(name)) for name in names]
    if args.json:
        write_output(reports if args.name == "all" else reports[0], args, table=False)
    else:
        text = "\n\n".join(report.summary() for report in reports) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as f:
                f.write(text)
            status(f"✅ Report saved to: {args.out}")
        else:
            sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    parsed, messages = load_config(args.config)
    if parsed is None:
        return EXIT_USAGE
    status("ℹ️  Running validation suite...")
    report = run_validation(parsed, include_numeric=args.numeric, extra_warnings=messages)
    for check in report.checks:
        marker = "✅" if check.passed else "❌"
        status(f"{marker} {check.name}: {check.detail}")
    write_output(report, args, table=False)
    if not report.passed:
        status(f"❌ {len(report.failures)} check(s) failed")
        return EXIT_FAILED
    status("✅ All checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antibunch",
        description="Two-particle correlations of fermion and boson beams from a thermal source",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Config files are JSON with a "units" field ("natural" or "SI").

Examples:
  python main.py scan-collinear --config config/scans/dip_d_sweep.json --out dip.csv
  python main.py scan-collinear --config config/scans/dip_beta_sweep.json --method gauss --threads 4
  python main.py preset xray
  python main.py validate --config config/scans/validate.json --json
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", "-c", required=True, help="Path to the JSON config file")
        p.add_argument("--out", "-o", default=None, help="Output file (default: stdout)")
        p.add_argument("--json", action="store_true", help="Write JSON instead of CSV")
        p.add_argument("--threads", type=int, default=None,
                       help="Worker processes (default: ANTIBUNCH_THREADS, else CPU count)")

    p = sub.add_parser("scan-collinear", help="C(z1, z2) for detectors on the beam axis")
    common(p)
    p.add_argument("--sweep", choices=SWEEP_NAMES, default=None, help="Parameter swept across curves")
    p.add_argument("--method", default=None, help="analytic, gauss or numeric (comma-separated for several)")
    p.set_defaults(func=cmd_scan_collinear)

    p = sub.add_parser("scan-offaxis", help="Closed-form C for off-axis or symmetric detector pairs")
    common(p)
    p.add_argument("--oracle", action="store_true", help="Add the momentum-quadrature oracle column")
    p.set_defaults(func=cmd_scan_offaxis)

    p = sub.add_parser("beam-profile", help="Far-field beam profile and angular widths")
    common(p)
    p.add_argument("--check", action="store_true", help="Compare the radial integral with the far field")
    p.set_defaults(func=cmd_beam_profile)

    p = sub.add_parser("preset", help="Dip visibility of an experiment preset")
    common(p, config=False)
    p.add_argument("name", help="Preset name, or 'all'")
    p.add_argument("--presets-dir", default=None, help="Directory of preset files (default: config/presets)")
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("validate", help="Run the validation suite on a config")
    common(p)
    p.add_argument("--numeric", action="store_true", help="Also check the full quadrature (slow)")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings():
        # collected into the results; repeated per grid point otherwise
        warnings.simplefilter("ignore", ApproximationWarning)
        try:
            return args.func(args)
        except KeyError as e:
            status(f"❌ {e.args[0] if e.args else e}")
            return EXIT_USAGE
        except ValueError as e:
            status(f"❌ {type(e).__name__}: {e}")
            return EXIT_USAGE
        except AntibunchError as e:
            status(f"❌ {type(e).__name__}: {e}")
            return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
