"""Command-line front end.

Subcommands: simulate, sweep-traveltime, quadrupole, density, validate.
Exit codes: 0 success, 2 usage / invalid configuration, 3 runtime failure.
All outputs are deterministic functions of the flag set; sweep ordering is
independent of --jobs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import dynamics, meanfield, observables, oracle
from .errors import CoherentPairError
from .observables import Plane, SeriesKind
from .pairstate import ExchangeSymmetry, PairConfig
from .wavepacket import SpreadLaw

SIMULATE_HEADER = "t,rx,ry,rz,px,py,pz,sigma_t,overlap,E_total,E_coul,Dxx,Dyy,Dzz,Dxz"
SWEEP_HEADER = "p,t_coherent,t_classical,t_free,regime"
QUADRUPOLE_HEADER = "t,Dxx,Dyy,Dzz,Dxz,verdict"

_SPIN_TO_SYMMETRY = {
    # parallel spins force the antisymmetric spatial part and vice versa
    "parallel": ExchangeSymmetry.ANTISYMMETRIC,
    "antiparallel": ExchangeSymmetry.SYMMETRIC,
    "distinguishable": ExchangeSymmetry.DISTINGUISHABLE,
}

_VERDICT_LABEL = {
    SeriesKind.MONOTONE_AFTER_TRANSIENT: "monotone",
    SeriesKind.OSCILLATORY: "oscillatory",
    SeriesKind.CONSTANT: "constant",
}


def _fmt(value: float) -> str:
    return format(value, ".12g")


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--sigma", type=float, default=1.0, help="packet width (Bohr)")
    sub.add_argument(
        "--r0", type=float, default=5.0,
        help="initial packet-center offset along z; centers sit at +/- r0",
    )
    sub.add_argument("--px", type=float, default=0.0, help="initial relative momentum, x")
    sub.add_argument("--pz", type=float, default=-0.5, help="initial relative momentum, z")
    sub.add_argument(
        "--spin", choices=sorted(_SPIN_TO_SYMMETRY), default="antiparallel",
        help="mutual spin orientation (selects the spatial symmetry)",
    )
    sub.add_argument("--coupling", type=float, default=1.0, help="Coulomb strength e0^2")
    sub.add_argument("--dt", type=float, default=0.01, help="integration step")
    sub.add_argument("--t-max", type=float, default=20.0, help="integration horizon")
    sub.add_argument(
        "--frozen-width", action="store_true",
        help="pin sigma_x(t) = sigma (no spreading)",
    )
    sub.add_argument("--output", required=True, help="output file path")


def _config_from_args(args) -> PairConfig:
    law = SpreadLaw.frozen_width() if args.frozen_width else None
    return PairConfig(
        args.sigma,
        np.array([0.0, 0.0, args.r0]),
        np.array([args.px, 0.0, args.pz]),
        _SPIN_TO_SYMMETRY[args.spin],
        args.coupling,
        law,
    )


def _run_trajectory(args):
    config = _config_from_args(args)
    state = meanfield.initial_state(config)
    return dynamics.integrate(state, args.dt, args.t_max)


def _cmd_simulate(args) -> int:
    traj = _run_trajectory(args)
    series = observables.quadrupole_timeseries(traj)
    lines = [SIMULATE_HEADER]
    for i in range(traj.t.size):
        tensor = series[i][1]
        row = [
            traj.t[i],
            traj.r[i, 0], traj.r[i, 1], traj.r[i, 2],
            traj.p[i, 0], traj.p[i, 1], traj.p[i, 2],
            traj.sigma[i],
            traj.overlap[i],
            traj.energy[i, 5],
            traj.energy[i, 3] + traj.energy[i, 4],
            tensor.d_xx, tensor.d_yy, tensor.d_zz, tensor.d_xz,
        ]
        lines.append(",".join(_fmt(v) for v in row))
    Path(args.output).write_text("\n".join(lines) + "\n")
    return 0


def _cmd_quadrupole(args) -> int:
    traj = _run_trajectory(args)
    series = observables.quadrupole_timeseries(traj)
    verdict = observables.detect(series)
    lines = [QUADRUPOLE_HEADER]
    last = len(series) - 1
    for i, (t, tensor) in enumerate(series):
        label = _VERDICT_LABEL[verdict.kind] if i == last else ""
        lines.append(
            ",".join(_fmt(v) for v in (t, tensor.d_xx, tensor.d_yy, tensor.d_zz, tensor.d_xz))
            + f",{label}"
        )
    Path(args.output).write_text("\n".join(lines) + "\n")
    return 0


def _cmd_sweep(args) -> int:
    if not (args.p_min < args.p_max or args.steps == 1):
        raise ValueError("need p-min < p-max (or a single step)")
    if args.steps < 1:
        raise ValueError("steps must be >= 1")
    if args.p_min <= 0:
        raise ValueError("momenta must be positive")
    config = _config_from_args(args)
    grid = np.linspace(args.p_min, args.p_max, args.steps)
    records = dynamics.sweep_traveltime(
        config, grid, dt=args.dt, t_max=args.t_max, jobs=args.jobs,
        horizon_factor=args.horizon_factor,
    )
    lines = [SWEEP_HEADER]
    for rec in records:
        if rec.error is not None:
            lines.append(f"{_fmt(rec.p)},,,,error:{rec.error}")
            continue
        t_coh = "" if rec.t_coherent is None else _fmt(rec.t_coherent)
        lines.append(
            f"{_fmt(rec.p)},{t_coh},{_fmt(rec.t_classical)},{_fmt(rec.t_free)},{rec.regime.value}"
        )
    Path(args.output).write_text("\n".join(lines) + "\n")
    return 0


def _cmd_density(args) -> int:
    config = _config_from_args(args)
    times = sorted(set(args.times))
    horizon = max(times) if max(times) > 0 else args.dt
    state = meanfield.initial_state(config)
    if max(times) > 0:
        traj = dynamics.integrate(state, args.dt, horizon + args.dt)
    else:
        traj = None
    out = Path(args.output)
    for idx, t in enumerate(times):
        if traj is None or t == 0.0:
            snap = meanfield.initial_state(config)
        else:
            i = int(np.argmin(np.abs(traj.t - t)))
            snap = traj.state(i)
        grid = observables.density_grid(snap, Plane(args.plane), args.extent, args.n)
        lines = [f"# t={_fmt(t)} extent={_fmt(args.extent)} n={args.n}"]
        for row in grid:
            lines.append(" ".join(_fmt(v) for v in row))
        if len(times) == 1:
            path = out
        else:
            path = out.with_name(f"{out.stem}_{idx:03d}{out.suffix}")
        path.write_text("\n".join(lines) + "\n")
    return 0


def _cmd_validate(args) -> int:
    results, ok = oracle.run_validation(args.seed_list)
    for report, passed in results:
        status = "PASS" if passed else "FAIL"
        note = f" ({report.note})" if report.note else ""
        print(
            f"{status} {report.quantity}: analytic={report.analytic:.10g} "
            f"numeric={report.numeric:.10g} rel_err={report.rel_err:.3e} "
            f"nodes={report.nodes_used}{note}"
        )
    counts = f"{sum(1 for _, p in results if p)}/{len(results)} checks passed"
    print(counts)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherentpair",
        description="Mean-field central impact of two identical coherent electrons (atomic units)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="integrate one trajectory to CSV")
    _add_config_flags(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_quad = sub.add_parser("quadrupole", help="quadrupole time series to CSV")
    _add_config_flags(p_quad)
    p_quad.set_defaults(func=_cmd_quadrupole)

    p_sweep = sub.add_parser("sweep-traveltime", help="traveltime vs momentum sweep")
    _add_config_flags(p_sweep)
    p_sweep.add_argument("--p-min", type=float, required=True)
    p_sweep.add_argument("--p-max", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument(
        "--horizon-factor", type=float, default=50.0,
        help="default horizon as a multiple of the free traveltime",
    )
    p_sweep.set_defaults(t_max=None, dt=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_dens = sub.add_parser("density", help="density grids at selected times")
    _add_config_flags(p_dens)
    p_dens.add_argument("--plane", choices=[p.value for p in Plane], default="xz")
    p_dens.add_argument("--extent", type=float, default=10.0)
    p_dens.add_argument("--n", type=int, default=64)
    p_dens.add_argument("--times", type=float, nargs="+", required=True)
    p_dens.set_defaults(func=_cmd_density)

    p_val = sub.add_parser("validate", help="run the oracle suite")
    p_val.add_argument("--seed-list", default=None, help="JSON file with seed lists")
    p_val.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    except CoherentPairError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
