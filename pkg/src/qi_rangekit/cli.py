"""Command-line surface.

Subcommands: ``power``, ``covariance``, ``ratio``, ``atten``, ``range``,
``sweep``, ``mc``.  A scenario config (flat JSON, benchmark defaults for
omitted fields) is taken from ``--config`` or the ``QI_RANGEKIT_CONFIG``
environment variable.  All flags use SI base units (hertz, meters,
seconds); dBm appears only where power is conventionally quoted in dBm.

Exit codes: 0 success, 2 invalid input or configuration, 3 no detection
range exists for the requested scenario.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, atmosphere, link_budget, radiometry
from .config import CONFIG_ENV_VAR, ScenarioConfig, dump_config, load_config
from .constants import CODATA, TEXTBOOK
from .detection_mc import detector_gain_experiment
from .errors import NoDetectionError, RangeKitError
from .quantum_states import (
    coherent_covariance,
    coherent_covariance_oracle,
    correlation_ratio,
    tmsv_covariance,
    tmsv_covariance_oracle,
)
from .range_solver import Illumination, r_max

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_NO_DETECTION = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qi-rangekit",
        description=(
            "Quantum- vs classical-illumination target detection: transmitter "
            "correlations, radiometry, attenuation, and maximum-range solutions."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--config",
        metavar="PATH",
        help=f"scenario config JSON (falls back to ${CONFIG_ENV_VAR}, then defaults)",
    )
    parser.add_argument(
        "--dump-config",
        metavar="PATH",
        nargs="?",
        const="-",
        help="write the effective scenario config as JSON ('-' or no value: stdout) and exit",
    )
    parser.add_argument(
        "--codata",
        action="store_true",
        help="use CODATA physical constants instead of the default 3-digit set",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("power", help="transmit power for N_s photons/mode at (f, B)")
    p.add_argument("--ns", type=float, required=True, help="mean photons per mode")
    p.add_argument("--freq", type=float, required=True, help="frequency [Hz]")
    p.add_argument("--bw", type=float, required=True, help="bandwidth [Hz]")

    p = sub.add_parser("covariance", help="signal/idler quadrature covariance matrix")
    p.add_argument("--ns", type=float, required=True, help="mean photons per mode")
    p.add_argument("--mode", choices=("qi", "ci"), required=True,
                   help="qi: entangled pair, ci: correlated coherent pair")
    p.add_argument("--oracle", action="store_true",
                   help="also compute the truncated Fock-space oracle and the deviation")
    p.add_argument("--cutoff", type=int, default=None,
                   help="oracle truncation index (default: from the tail rule)")

    p = sub.add_parser("ratio", help="classical/quantum correlation ratio C_c/C_q")
    p.add_argument("--ns", type=float, required=True, help="mean photons per mode")

    p = sub.add_parser("atten", help="absorption coefficient lookup and form factor")
    p.add_argument("--freq", type=float, required=True, help="frequency [Hz]")
    p.add_argument("--table", metavar="PATH", default=None,
                   help="attenuation CSV (default: config table, else bundled)")
    p.add_argument("--range-m", type=float, default=None,
                   help="also print the one-way form factor at this range [m]")

    p = sub.add_parser("range", help="maximum detection range for the scenario")
    p.add_argument("--ns", type=float, required=True, help="mean photons per mode")
    p.add_argument("--freq", type=float, required=True, help="frequency [Hz]")
    p.add_argument("--mode", choices=("ci", "qi"), default=None,
                   help="transmitter (default: solve and print both)")

    p = sub.add_parser("sweep", help="write a ratio or range sweep CSV")
    p.add_argument("--figure", type=int, choices=(1, 3), required=True,
                   help="1: correlation-ratio sweep, 3: range sweep")
    p.add_argument("--ns-min", type=float, default=1e-3)
    p.add_argument("--ns-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--output", metavar="PATH", default=None,
                   help="CSV path (default: figure<N>.csv)")

    p = sub.add_parser("mc", help="Monte Carlo detector-gain experiment")
    p.add_argument("--ns", type=float, required=True, help="mean photons per mode")
    p.add_argument("--eta", type=float, required=True, help="channel transmissivity")
    p.add_argument("--nb", type=float, required=True, help="background photons per mode")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    return parser


def _resolve_config(args: argparse.Namespace) -> ScenarioConfig:
    path = args.config or os.environ.get(CONFIG_ENV_VAR)
    if path:
        return load_config(path)
    return ScenarioConfig()


def _format_matrix(matrix: np.ndarray) -> str:
    labels = ("I_S", "Q_S", "I_I", "Q_I")
    header = "        " + "".join(f"{label:>14}" for label in labels)
    lines = [header]
    for label, row in zip(labels, matrix):
        cells = "".join(f"{float(v):>14.9g}" for v in row)
        lines.append(f"{label:>8}{cells}")
    return "\n".join(lines)


def _cmd_power(args: argparse.Namespace, config: ScenarioConfig, out) -> int:
    constants = CODATA if args.codata else TEXTBOOK
    watts = radiometry.transmit_power(args.ns, args.freq, args.bw, constants)
    dbm = radiometry.watts_to_dbm(watts)
    print(f"P_t = {watts:.6g} W = {dbm:.6f} dBm", file=out)
    return EXIT_OK


def _cmd_covariance(args: argparse.Namespace, config: ScenarioConfig, out) -> int:
    if args.mode == "qi":
        closed, oracle_fn = tmsv_covariance, tmsv_covariance_oracle
    else:
        closed, oracle_fn = coherent_covariance, coherent_covariance_oracle
    cov = closed(args.ns)
    print(f"{args.mode} covariance (2x symmetrized second moments) at N_s = {args.ns!r}:",
          file=out)
    print(_format_matrix(cov), file=out)
    if args.oracle:
        oracle = oracle_fn(args.ns, args.cutoff)
        print("truncated Fock-space oracle:", file=out)
        print(_format_matrix(oracle), file=out)
        deviation = float(np.abs(oracle - cov).max())
        print(f"max abs deviation: {deviation:.3e}", file=out)
    return EXIT_OK


def _cmd_ratio(args: argparse.Namespace, config: ScenarioConfig, out) -> int:
    print(f"C_c/C_q = {correlation_ratio(args.ns):.9g} at N_s = {args.ns!r}", file=out)
    return EXIT_OK


def _cmd_atten(args: argparse.Namespace, config: ScenarioConfig, out) -> int:
    if args.table is not None:
        table = atmosphere.load_table(args.table)
    else:
        table = config.load_attenuation_table() or atmosphere.bundled_table()
    gamma = atmosphere.gamma_at(table, args.freq)
    lo, hi = table.span_ghz
    print(f"gamma({args.freq:.6g} Hz) = {gamma:.6g} dB/km "
          f"[table: {table.source or 'inline'}, span {lo:g}-{hi:g} GHz]", file=out)
    if args.range_m is not None:
        f_form = atmosphere.form_factor(gamma, args.range_m)
        print(f"F({args.range_m:.6g} m) = {f_form:.6g} (one-way)", file=out)
    return EXIT_OK


def _solve_one(config: ScenarioConfig, n_s: float, f_hz: float,
               mode: Illumination, table, constants) -> tuple:
    problem = config.make_problem(n_s, f_hz, mode, table=table, constants=constants)
    solution = r_max(problem)
    f_form = atmosphere.form_factor(problem.gamma_db_per_km, solution.r_max_m)
    eta = link_budget.channel_transmissivity(
        problem.radar.sigma_m2,
        problem.radar.gain(f_hz, constants),
        problem.radar.aperture_m2,
        f_form,
        solution.r_max_m,
    )
    return problem, solution, f_form, eta


def _cmd_range(args: argparse.Namespace, config: ScenarioConfig, out) -> int:
    constants = CODATA if args.codata else TEXTBOOK
    table = config.load_attenuation_table()
    # noise budget is configured as a power; the implied temperature and
    # occupancy are derived, so show them
    print(
        f"noise: P_B = {config.noise_power_dbm:g} dBm -> implied T_eff = "
        f"{config.t_eff_kelvin(constants):.6g} K, N_B({args.freq:.6g} Hz) = "
        f"{config.noise_occupancy(args.freq, constants):.6g}",
        file=out,
    )
    modes = (Illumination(args.mode),) if args.mode else (Illumination.CI, Illumination.QI)
    for mode in modes:
        problem, solution, f_form, eta = _solve_one(
            config, args.ns, args.freq, mode, table, constants
        )
        status = "converged" if solution.converged else "NOT converged"
        print(
            f"{mode.value}: r_max = {solution.r_max_m:.6g} m  "
            f"(residual {solution.residual_db:.3e} dB, {status}, "
            f"{solution.iterations} iterations)",
            file=out,
        )
        print(
            f"    gamma = {problem.gamma_db_per_km:.6g} dB/km, "
            f"F = {f_form:.6g}, eta = {eta:.6g}",
            file=out,
        )
    return EXIT_OK


def _log_grid(ns_min: float, ns_max: float, points: int) -> list[float]:
    if not (math.isfinite(ns_min) and ns_min > 0.0):
        raise RangeKitError(f"--ns-min must be positive and finite, got {ns_min!r}")
    if not (math.isfinite(ns_max) and ns_max > ns_min):
        raise RangeKitError(f"--ns-max must exceed --ns-min, got {ns_max!r}")
    if points < 2:
        raise RangeKitError(f"--points must be >= 2, got {points!r}")
    grid = np.logspace(math.log10(ns_min), math.log10(ns_max), points)
    return [float(v) for v in grid]


def _cmd_sweep(args: argparse.Namespace, config: ScenarioConfig, out) -> int:
    constants = CODATA if args.codata else TEXTBOOK
    grid = _log_grid(args.ns_min, args.ns_max, args.points)
    path = Path(args.output) if args.output else Path(f"figure{args.figure}.csv")

    lines: list[str] = []
    if args.figure == 1:
        lines.append("n_s,ratio")
        for n_s in grid:
            lines.append(f"{n_s!r},{correlation_ratio(n_s)!r}")
    else:
        table = config.load_attenuation_table()
        lines.append("n_s,frequency_hz,mode,r_max_m,converged")
        for f_hz in config.frequencies_hz:
            for mode in (Illumination.CI, Illumination.QI):
                for n_s in grid:
                    problem = config.make_problem(
                        n_s, f_hz, mode, table=table, constants=constants
                    )
                    try:
                        solution = r_max(problem)
                        r_field = repr(solution.r_max_m)
                        converged = "true" if solution.converged else "false"
                    except NoDetectionError:
                        r_field = ""
                        converged = "false"
                    lines.append(f"{n_s!r},{float(f_hz)!r},{mode.value},{r_field},{converged}")

    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines) - 1} rows to {path}", file=out)
    return EXIT_OK


def _cmd_mc(args: argparse.Namespace, config: ScenarioConfig, out) -> int:
    result = detector_gain_experiment(
        n_s=args.ns, eta=args.eta, n_b=args.nb, trials=args.trials, seed=args.seed
    )
    print(
        f"deflection-SNR gain (QI/CI) = {result.ratio:.6g} "
        f"+/- {result.standard_error:.3g} "
        f"(QI {result.deflection_quantum:.6g}, CI {result.deflection_classical:.6g}, "
        f"{result.trials} trials, seed {args.seed})",
        file=out,
    )
    return EXIT_OK


_HANDLERS = {
    "power": _cmd_power,
    "covariance": _cmd_covariance,
    "ratio": _cmd_ratio,
    "atten": _cmd_atten,
    "range": _cmd_range,
    "sweep": _cmd_sweep,
    "mc": _cmd_mc,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        config = _resolve_config(args)
        if args.dump_config is not None:
            text = dump_config(config)
            if args.dump_config == "-":
                out.write(text)
            else:
                Path(args.dump_config).write_text(text, encoding="utf-8")
            return EXIT_OK
        if args.command is None:
            parser.error("a command is required (see --help)")
        return _HANDLERS[args.command](args, config, out)
    except NoDetectionError as exc:
        print(f"no detection: {exc}", file=sys.stderr)
        return EXIT_NO_DETECTION
    except RangeKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
