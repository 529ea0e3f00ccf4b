"""
Command-line entry point of the extended-electron laboratory.

    python lab.py alpha-gamma --hw0 1e-4 --out results/
    python lab.py phase --B 0 0.5 1.0 --l 10
    python lab.py ensemble --E-T 1 --V -3 --V-rfa 0.25

Every data file is written with a ``<file>.manifest.json`` beside it. Failures
print one JSON line {"error": ..., "message": ...} to stderr.
Exit codes: 0 ok, 2 usage, 3 domain or config error, 4 I/O error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import config
import experiments
from physics import ConfigError, DomainError, PhysicalConfig, load_config, preset
from physics.utils.tables import RunRecorder

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


class LabArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of printing usage and exiting."""

    def error(self, message):
        raise UsageError(message)


# --- Subcommand handlers ---

def cmd_fields(args, physical: PhysicalConfig, recorder: RunRecorder):
    table, report = experiments.intrinsic_fields(args.kind, args.u, physical, points=args.points, t=args.t)
    recorder.write_table("fields", table, args.format)
    recorder.write_report("fields_energy", report)


def cmd_spin(args, physical: PhysicalConfig, recorder: RunRecorder):
    table, report = experiments.spin_profile(args.kind, args.u, physical, points=args.points, window=args.window)
    recorder.write_table("spin", table, args.format)
    recorder.write_report("spin_report", report)


def cmd_electrostatic(args, physical: PhysicalConfig, recorder: RunRecorder):
    history = experiments.load_history(args.history)
    report = experiments.electrostatic_balance(history, charge=args.charge)
    recorder.write_report("electrostatic", report)
    print(json.dumps({key: report[key] for key in ("balanced", "total_kinetic", "total_emitted", "violations")}))


def cmd_phase(args, physical: PhysicalConfig, recorder: RunRecorder):
    B_values = args.B if args.B is not None else experiments.field_grid(args.B_min, args.B_max, args.B_steps)
    table, fit = experiments.phase_table(physical, B_values, path_length=args.l, u=args.u, wavelength=args.wavelength)
    recorder.write_table("phase", table, args.format)
    if fit:
        recorder.write_report("phase_fit", fit)


def cmd_ensemble(args, physical: PhysicalConfig, recorder: RunRecorder):
    tables, report = experiments.ensemble_experiment(
        physical,
        args.E_T,
        profile=args.profile,
        grid=args.grid,
        dim=args.dim,
        potentials=args.V or (),
        V_rfa=args.V_rfa,
        domain=tuple(args.domain),
        r_points=args.r_points,
        excluded=tuple(args.exclude) if args.exclude else None,
    )
    for name, table in tables.items():
        recorder.write_table(f"ensemble_{name}", table, args.format)
    recorder.write_report("ensemble_report", report)


def cmd_absorb(args, physical: PhysicalConfig, recorder: RunRecorder):
    table, report = experiments.absorption_trace(physical, args.hw0, tol=args.tol, n_max=args.n_max)
    recorder.write_table("absorb", table, args.format)
    recorder.write_report("absorb_report", report)


def cmd_alpha_gamma(args, physical: PhysicalConfig, recorder: RunRecorder):
    for name, table in experiments.alpha_gamma(physical, args.hw0).items():
        recorder.write_table(name, table, args.format)


def cmd_selfenergy(args, physical: PhysicalConfig, recorder: RunRecorder):
    table = experiments.self_energy(physical, args.a_min, args.a_max, args.steps)
    recorder.write_table("selfenergy", table, args.format)


def cmd_lambshift(args, physical: PhysicalConfig, recorder: RunRecorder):
    report = experiments.lamb_shift(physical, args.C, args.dE, K=args.K)
    recorder.write_report("lambshift", report)
    print(json.dumps(report))


# --- Parser ---

def build_parser() -> argparse.ArgumentParser:
    common = LabArgumentParser(add_help=False)
    common.add_argument("--config", help="constants file (key = value per line)")
    common.add_argument("--out", help="output directory (default: $LAB_OUTPUT_DIR or ./output)")
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="table format")
    common.add_argument("--units", choices=("natural", "si"), help="unit preset (default: $LAB_UNITS)")

    parser = LabArgumentParser(prog="lab", description="Extended-electron numerical laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("fields", cmd_fields, "intrinsic fields over one wavelength")
    p.add_argument("--kind", choices=("electron", "photon"), default="electron")
    p.add_argument("--u", type=float, default=0.5)
    p.add_argument("--points", type=int, default=129)
    p.add_argument("--t", type=float, default=0.0)

    p = add("spin", cmd_spin, "spin orientation and solved (g, s)")
    p.add_argument("--kind", choices=("electron", "photon"), default="electron")
    p.add_argument("--u", type=float)
    p.add_argument("--points", type=int, default=129)
    p.add_argument("--window", type=float, help="measurement window for the precision check")

    p = add("electrostatic", cmd_electrostatic, "energy balance of an acceleration history")
    p.add_argument("history", help='JSON list of {"phi_step": .., "delta_kinetic": ..}')
    p.add_argument("--charge", type=float, default=1.0)

    p = add("phase", cmd_phase, "interferometric phase against external field")
    p.add_argument("--B", type=float, nargs="+")
    p.add_argument("--B-min", dest="B_min", type=float, default=0.0)
    p.add_argument("--B-max", dest="B_max", type=float, default=1.0)
    p.add_argument("--B-steps", dest="B_steps", type=int, default=50)
    p.add_argument("--l", type=float, default=1.0, help="path length inside the field")
    p.add_argument("--lambda", dest="wavelength", type=float, help="wavelength (default: electron at u)")
    p.add_argument("--u", type=float, default=0.5)

    p = add("ensemble", cmd_ensemble, "quantum ensemble, potentials and collapse")
    p.add_argument("--E-T", dest="E_T", type=float, default=1.0)
    p.add_argument("--profile", choices=("uniform", "gaussian"), default="uniform")
    p.add_argument("--V", type=float, action="append", help="potential step; repeat for several")
    p.add_argument("--V-rfa", dest="V_rfa", type=float)
    p.add_argument("--domain", type=float, nargs=2, default=[-20.0, 20.0])
    p.add_argument("--grid", type=int, default=2049)
    p.add_argument("--dim", type=int, choices=(1, 3), default=1)
    p.add_argument("--r-points", dest="r_points", type=int, default=401)
    p.add_argument("--exclude", type=float, nargs=2, help="region with no interaction")

    p = add("absorb", cmd_absorb, "photon absorption recursion")
    p.add_argument("--hw0", type=float, required=True)
    p.add_argument("--tol", type=float, help="stopping increment (default: 1e-12*m*c^2)")
    p.add_argument("--n-max", dest="n_max", type=int, default=experiments.DEFAULT_N_MAX)

    p = add("alpha-gamma", cmd_alpha_gamma, "virtual mass factor against Lorentz gamma")
    p.add_argument("--hw0", type=float, default=1e-4)

    p = add("selfenergy", cmd_selfenergy, "electrostatic and fluctuation self-energies")
    p.add_argument("--a-min", dest="a_min", type=float, default=0.01)
    p.add_argument("--a-max", dest="a_max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=50)

    p = add("lambshift", cmd_lambshift, "Lamb shift logarithm with cutoff K")
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--dE", type=float, required=True, help="average excitation energy")
    p.add_argument("--K", type=float, help="cutoff (default: m*c^2)")

    return parser


def resolve_physical_config(args) -> Tuple[PhysicalConfig, Optional[str]]:
    physical = preset(args.units or config.LAB_UNITS)
    source = args.config or config.LAB_CONFIG_FILE
    if source:
        physical = load_config(source, base=physical)
    return physical, source


def _parameters(args) -> Dict:
    return {key: value for key, value in vars(args).items() if key != "handler"}


def emit_error(kind: str, message: str):
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv``, run one subcommand and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        emit_error("usage", str(e))
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    config.configure_logging()
    try:
        try:
            config.validate_production_config()
        except ValueError as e:
            raise ConfigError(str(e))
        physical, source = resolve_physical_config(args)
        recorder = RunRecorder(
            Path(args.out) if args.out else config.OUTPUT_DIR,
            args.command,
            _parameters(args),
            config_source=source,
            version=config.VERSION,
        )
        args.handler(args, physical, recorder)
    except ConfigError as e:
        emit_error("config", str(e))
        return EXIT_DOMAIN
    except DomainError as e:
        emit_error("domain", str(e))
        return EXIT_DOMAIN
    except OSError as e:
        emit_error("io", str(e))
        return EXIT_IO

    logger.info(f"{args.command}: wrote {len(recorder.written)} files")
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
