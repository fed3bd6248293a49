"""Command-line interface emitting CSV data and optional gnuplot scripts.

Subcommands: ``amplitude`` (bare amplitude series), ``dynamics`` (four
partition concurrences plus events), ``sweep`` (alpha-time surface with
optional regime boundaries), ``figure2`` (fixed-alpha curves across
coupling ratios).  All times are in units of 1/gamma0 unless --gamma0
rescales them.  Exit codes: 0 success, 2 usage error, 3 numerical
failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .amplitude import (
    AmplitudeInstabilityError,
    c0_closed_series,
    c0_discrete_modes,
    c0_volterra,
)
from .concurrence import EigenSolverError
from .dynamics import StateValidationError, run_trajectory
from .spectral import ReservoirSpectrum
from .states import Partition
from .sweep import figure2_curves, regime_boundary_map, sweep_alpha_time

_NUMERIC_ERRORS = (
    AmplitudeInstabilityError,
    StateValidationError,
    EigenSolverError,
    FloatingPointError,
)


def _positive(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _alpha_arg(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"alpha must lie in [0, 1], got {text}")
    return value


def _ratio_list(text: str) -> tuple[float, ...]:
    try:
        ratios = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad ratio list: {text}")
    if not ratios or any(r <= 0.0 for r in ratios):
        raise argparse.ArgumentTypeError(f"ratios must be positive: {text}")
    return ratios


def _partition_list(text: str) -> tuple[Partition, ...]:
    labels = {p.value: p for p in Partition}
    chosen = []
    for name in text.split(","):
        name = name.strip()
        if name not in labels:
            raise argparse.ArgumentTypeError(f"unknown partition {name!r}")
        chosen.append(labels[name])
    if not chosen:
        raise argparse.ArgumentTypeError("no partitions selected")
    return tuple(chosen)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gamma-ratio", type=_positive, default=0.1,
                        help="gamma / gamma0 (default 0.1)")
    parser.add_argument("--gamma0", type=_positive, default=1.0,
                        help="absolute qubit relaxation rate (default 1.0)")
    parser.add_argument("--t-max", type=_positive, default=15.0,
                        help="grid extent in units of 1/gamma0 (default 15)")
    parser.add_argument("--dt", type=_positive, default=1e-3,
                        help="grid step in units of 1/gamma0 (default 1e-3)")
    parser.add_argument("--out", type=Path, default=None,
                        help="output CSV path (default: stdout)")
    parser.add_argument("--gnuplot", action="store_true",
                        help="also emit a gnuplot script next to --out")


def _spectrum(args: argparse.Namespace) -> ReservoirSpectrum:
    return ReservoirSpectrum(
        gamma0=args.gamma0,
        gamma=args.gamma_ratio * args.gamma0,
        omega0=100.0 * args.gamma0,
    )


def _scaled_grid(args: argparse.Namespace) -> tuple[float, float]:
    # flags are in units of 1/gamma0; the engine works in absolute time
    return args.t_max / args.gamma0, args.dt / args.gamma0


def _write_text(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _stream_lines(path: Path | None, lines) -> None:
    # row streams can run to millions of lines; never accumulate them
    if path is None:
        for line in lines:
            sys.stdout.write(line + "\n")
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            for line in lines:
                handle.write(line + "\n")


def _gnuplot_path(out: Path) -> Path:
    return out.with_suffix(".gp")


def _emit_gnuplot(args: argparse.Namespace, script: str) -> None:
    if args.gnuplot:
        _write_text(_gnuplot_path(args.out), script)


def _cmd_amplitude(args: argparse.Namespace) -> int:
    s = _spectrum(args)
    t_max, dt = _scaled_grid(args)
    if args.solver == "closed":
        pairs = c0_closed_series(s, t_max, dt)
    elif args.solver == "volterra":
        pairs = c0_volterra(s, t_max, dt)
    else:
        pairs = c0_discrete_modes(
            s, args.n_modes, args.window * args.gamma0, t_max, dt
        )
    lines = ["t,c0,c0_sq,c_tilde_sq"]
    for p in pairs:
        lines.append(
            f"{p.t:.6f},{p.c0:.6f},{p.c0 * p.c0:.6f},{p.c_tilde * p.c_tilde:.6f}"
        )
    _write_text(args.out, "\n".join(lines) + "\n")
    if args.out is not None:
        _emit_gnuplot(args, _amplitude_script(args.out))
    return 0


def _amplitude_script(csv_path: Path) -> str:
    return (
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        "set xlabel 't (1/gamma0)'\n"
        f"plot '{csv_path.name}' using 1:2 with lines, \\\n"
        "     '' using 1:3 with lines, \\\n"
        "     '' using 1:4 with lines\n"
    )


def _cmd_dynamics(args: argparse.Namespace) -> int:
    s = _spectrum(args)
    t_max, dt = _scaled_grid(args)
    result = run_trajectory(args.alpha, s, t_max=t_max, dt=dt, solver=args.solver)
    partitions = args.partitions
    header = "t," + ",".join(f"C_{p.value}" for p in partitions)
    lines = [header]
    times = result.series[partitions[0]].times
    columns = [result.series[p].values for p in partitions]
    for j, t in enumerate(times):
        row = ",".join(f"{column[j]:.6f}" for column in columns)
        lines.append(f"{t:.6f},{row}")
    main_csv = "\n".join(lines) + "\n"

    event_lines = ["partition,kind,time"]
    for partition in (Partition.Q1Q2, Partition.R1R2):
        for event in result.events[partition]:
            event_lines.append(
                f"{partition.value},{event.kind.value},{event.t:.6f}"
            )
    regime_text = " ".join(
        f"{p.value}={label.value}" for p, label in result.regimes.items()
    )
    event_lines.append(f"# regimes {regime_text} t_max={args.t_max:.6f}")
    events_csv = "\n".join(event_lines) + "\n"

    if args.out is None:
        sys.stdout.write(main_csv)
        sys.stdout.write("# events\n")
        sys.stdout.write(events_csv)
    else:
        _write_text(args.out, main_csv)
        _write_text(args.out.with_suffix(".events.csv"), events_csv)
        _emit_gnuplot(args, _dynamics_script(args.out, partitions))
    return 0


def _dynamics_script(csv_path: Path, partitions) -> str:
    terms = [f"'{csv_path.name}' using 1:2 with lines"]
    terms += [f"'' using 1:{i + 2} with lines" for i in range(1, len(partitions))]
    return (
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        "set xlabel 't (1/gamma0)'\n"
        "set ylabel 'concurrence'\n"
        "plot " + ", \\\n     ".join(terms) + "\n"
    )


def _cmd_sweep(args: argparse.Namespace) -> int:
    if args.alpha_max < args.alpha_min:
        raise ValueError("--alpha-max must be at least --alpha-min")
    s = _spectrum(args)
    t_max, dt = _scaled_grid(args)
    alphas = []
    k = 0
    while True:
        value = args.alpha_min + k * args.alpha_step
        if value > args.alpha_max + 1e-12:
            break
        alphas.append(min(value, 1.0))
        k += 1
    surface = sweep_alpha_time(s, alphas, t_max=t_max, dt=dt)

    def rows():
        yield "alpha,t,partition,concurrence"
        for alpha, t, partition, value in surface.iter_rows():
            yield f"{alpha:.6f},{t:.6f},{partition},{value:.6f}"

    boundary_csv = None
    if args.boundaries:
        bmap = regime_boundary_map(s, alphas, t_max=t_max, dt=dt)
        blines = ["alpha,q1q2_regime,r1r2_regime"]
        for alpha, q_label, r_label in zip(bmap.alphas, bmap.q1q2, bmap.r1r2):
            r_text = r_label.value if r_label is not None else "Unresolved"
            blines.append(f"{alpha:.6f},{q_label.value},{r_text}")
        esd = "none" if bmap.esd_boundary is None else f"{bmap.esd_boundary:.6f}"
        perm = (
            "none"
            if bmap.permanent_boundary is None
            else f"{bmap.permanent_boundary:.6f}"
        )
        blines.append(f"# critical_alpha_esd={esd}")
        blines.append(f"# critical_alpha_permanent={perm}")
        boundary_csv = "\n".join(blines) + "\n"

    _stream_lines(args.out, rows())
    if args.out is None:
        if boundary_csv is not None:
            sys.stdout.write("# boundaries\n")
            sys.stdout.write(boundary_csv)
    else:
        if boundary_csv is not None:
            _write_text(args.out.with_suffix(".boundaries.csv"), boundary_csv)
        _emit_gnuplot(args, _long_format_script(args.out, xcol=2))
    return 0


def _long_format_script(csv_path: Path, xcol: int) -> str:
    plots = ", \\\n     ".join(
        f"'' using {xcol}:(strcol(3) eq '{p.value}' ? $4 : 1/0) "
        f"with points pt 7 ps 0.2 title '{p.value}'"
        for p in list(Partition)[1:]
    )
    first = list(Partition)[0]
    return (
        "set datafile separator ','\n"
        "set xlabel 't (1/gamma0)'\n"
        "set ylabel 'concurrence'\n"
        f"plot '{csv_path.name}' using "
        f"{xcol}:(strcol(3) eq '{first.value}' ? $4 : 1/0) "
        f"with points pt 7 ps 0.2 title '{first.value}', \\\n     " + plots + "\n"
    )


def _cmd_figure2(args: argparse.Namespace) -> int:
    t_max, dt = _scaled_grid(args)
    curves = figure2_curves(
        alpha=args.alpha,
        gamma_ratios=args.gamma_ratios,
        t_max=t_max,
        dt=dt,
        gamma0=args.gamma0,
    )

    def rows():
        yield "gamma_ratio,t,partition,concurrence"
        for ratio, t, partition, value in curves.iter_rows():
            yield f"{ratio:.6f},{t:.6f},{partition},{value:.6f}"

    _stream_lines(args.out, rows())
    if args.out is not None:
        _emit_gnuplot(args, _long_format_script(args.out, xcol=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entdyn",
        description="Concurrence dynamics of two qubits in independent "
        "lossy cavities with Lorentzian memory.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_amp = sub.add_parser("amplitude", help="excited-state amplitude series")
    _add_common(p_amp)
    p_amp.add_argument("--solver", choices=("closed", "volterra", "modes"),
                       default="closed")
    p_amp.add_argument("--n-modes", type=int, default=4000,
                       help="bath modes for --solver modes (default 4000)")
    p_amp.add_argument("--window", type=_positive, default=20.0,
                       help="bath half-width in gamma0 units (default 20)")
    p_amp.set_defaults(func=_cmd_amplitude)

    p_dyn = sub.add_parser("dynamics", help="four-partition concurrence trajectory")
    _add_common(p_dyn)
    p_dyn.add_argument("--alpha", type=_alpha_arg, default=0.35)
    p_dyn.add_argument("--solver", choices=("closed", "volterra", "modes"),
                       default="closed")
    p_dyn.add_argument("--partitions", type=_partition_list,
                       default=tuple(Partition),
                       help="comma list among q1q2,r1r2,q1r1,q1r2 (default all)")
    p_dyn.set_defaults(func=_cmd_dynamics)

    p_sweep = sub.add_parser("sweep", help="alpha-time concurrence surface")
    _add_common(p_sweep)
    p_sweep.add_argument("--alpha-min", type=_alpha_arg, default=0.0)
    p_sweep.add_argument("--alpha-max", type=_alpha_arg, default=1.0)
    p_sweep.add_argument("--alpha-step", type=_positive, default=0.01)
    p_sweep.add_argument("--boundaries", action="store_true",
                         help="also emit the regime boundary map")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fig = sub.add_parser("figure2", help="fixed-alpha curves across ratios")
    _add_common(p_fig)
    p_fig.add_argument("--alpha", type=_alpha_arg, default=0.35)
    p_fig.add_argument("--gamma-ratios", type=_ratio_list,
                       default=(5.0, 0.1, 0.05),
                       help="comma list of gamma/gamma0 (default 5,0.1,0.05)")
    p_fig.set_defaults(func=_cmd_figure2)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if getattr(args, "gnuplot", False) and args.out is None:
        print("entdyn: --gnuplot requires --out so the script can reference "
              "the CSV", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except _NUMERIC_ERRORS as exc:
        print(f"entdyn: numerical failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"entdyn: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"entdyn: I/O failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
