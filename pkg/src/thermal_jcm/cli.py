"""Command-line front end: every experiment as a subcommand writing CSV.

Exit codes: 0 success, 1 computation-domain error, 2 usage error.
The environment variable ``JCM_THREADS`` caps worker threads for
beta scans (0 means one per core).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys

import numpy as np

from . import averages, entanglement, sampling, verify
from .series import BlochVector, ModelParams, TruncationPolicy, trajectory


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _range(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("expected LO:HI")
    return float(lo), float(hi)


def _truncation(text: str) -> TruncationPolicy:
    try:
        return TruncationPolicy.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _bloch(text: str) -> BlochVector:
    try:
        s = BlochVector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if s.norm() > 1 + 1e-12:
        raise argparse.ArgumentTypeError("Bloch vector must have norm <= 1")
    return s


def _workers() -> int:
    raw = os.environ.get("JCM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return (os.cpu_count() or 1) if n <= 0 else n


class CsvOut:
    """Formats floats with a fixed number of significant digits."""

    def __init__(self, precision: int):
        self.precision = precision
        self.buf = io.StringIO()
        self.writer = csv.writer(self.buf, lineterminator="\n")

    def fmt(self, v):
        if isinstance(v, (float, np.floating)):
            return format(float(v), f".{self.precision}g")
        return str(v)

    def comment(self, text: str):
        self.buf.write(f"# {text}\n")

    def row(self, *values):
        self.writer.writerow([self.fmt(v) for v in values])

    def save(self, path: str | None):
        data = self.buf.getvalue()
        if path in (None, "-"):
            sys.stdout.write(data)
        else:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(data)


def _params(args, beta: float) -> ModelParams:
    dw = getattr(args, "delta_omega", 0.0)
    g = getattr(args, "g", 1.0)
    omega0 = getattr(args, "omega0", 1.0)
    return ModelParams.detuned(beta, dw, g_coupling=g, omega0=omega0, truncation=args.truncation)


def cmd_trajectory(args):
    if not args.dt > 0:
        raise UsageError("--dt must be > 0")
    if not args.t_max >= 0:
        raise UsageError("--t-max must be >= 0")
    n = int(round(args.t_max / args.dt))
    t = args.dt * np.arange(n + 1)
    traj = trajectory(args.s0, t, _params(args, args.beta))
    out = CsvOut(args.precision)
    out.row("t", "sx", "sy", "sz")
    for ti, (x, y, z) in zip(traj.times, traj.points):
        out.row(float(ti), float(x), float(y), float(z))
    out.save(args.output)


def cmd_average(args):
    general = args.delta_omega != 0 or args.g != 1.0 or args.omega0 != 1.0
    out = CsvOut(args.precision)
    header = ["beta"] + (["delta_omega"] if general else []) + ["avg_l1", "avg_l3", "avg_l4"]
    if args.numeric_check:
        header += ["numeric_sz", "abs_deviation"]
    out.row(*header)

    if args.beta_inf:
        _, cold = averages.time_average_limits(_params(args, 1.0))
        out.row("inf", *([args.delta_omega] if general else []), cold.avg_l1, cold.avg_l3, cold.avg_l4)
        out.save(args.output)
        return
    if not args.beta:
        raise UsageError("empty beta grid")
    for beta in args.beta:
        if beta < 0:
            raise ValueError(f"beta must be >= 0, got {beta}")
        p = _params(args, beta)
        if general:
            avg = averages.time_average_closed_general(p)
        else:
            avg = averages.time_average_closed_resonant(beta)
        row = [beta] + ([args.delta_omega] if general else []) + [avg.avg_l1, avg.avg_l3, avg.avg_l4]
        if args.numeric_check:
            closed = averages.average_bloch(args.s0, avg)
            num = averages.time_average_numeric(args.s0, p, args.t_max, args.dt)
            row += [num.sz, abs(num.sz - closed.sz)]
        out.row(*row)
    out.save(args.output)


def cmd_histogram(args):
    if not args.dt > 0 or args.samples < 1 or not args.class_interval > 0:
        raise UsageError("--dt and --class-interval must be > 0 and --samples >= 1")
    p = _params(args, args.beta)
    series = sampling.sample_series(p, args.s0, args.dt, args.samples)
    hist = sampling.build_histogram(series, args.class_interval)
    moments = sampling.sample_moments(series)

    out = CsvOut(args.precision)
    out.comment(f"beta={args.beta:g} dt={args.dt:g} samples={args.samples} class_interval={args.class_interval:g}")
    out.comment(f"mu={moments.mu!r} sigma2={moments.sigma2!r} skewness={sampling.sample_skewness(series)!r}")
    out.row("bin_left", "count")
    for e, c in zip(hist.bin_left_edges, hist.counts):
        out.row(float(e), int(c))
    out.save(args.output)

    if args.fit == "none":
        return
    fit_out = CsvOut(args.precision)
    centers = hist.centers
    if args.fit == "arcsine":
        fit = sampling.fit_arcsine_amplitude(hist, exclude_endpoints=args.exclude_endpoints)
        fit_out.comment("fit=arcsine model=a/sqrt(1-(2y+1)^2)")
        fit_out.comment(f"a={fit.amplitude!r} residual={fit.residual!r} bins={fit.n_bins}")
        fit_out.comment(f"l1_distance_interior={sampling.arcsine_l1_distance(hist)!r}")
        keep = (centers > -1) & (centers < 0)
        ys = centers[keep]
        vals = fit.amplitude * sampling.arcsine_density(ys)
    else:
        fit = sampling.fit_normal(hist, moments)
        fit_out.comment("fit=normal model=a*exp(-(y-mu)^2/(2*sigma2))")
        fit_out.comment(
            f"a={fit.amplitude!r} mu={fit.mu!r} sigma2={fit.sigma2!r} residual={fit.residual!r} "
            f"density_scale={fit.density_scale!r}"
        )
        ys = centers
        vals = fit(ys)
    fit_out.row("y", "fitted_value")
    for y, v in zip(ys, vals):
        fit_out.row(float(y), float(v))
    fit_path = args.fit_output
    if fit_path is None:
        if args.output in (None, "-"):
            fit_path = "-"
        else:
            root, ext = os.path.splitext(args.output)
            fit_path = f"{root}_fit{ext or '.csv'}"
    fit_out.save(fit_path)


def cmd_variance_scan(args):
    if args.betas is not None:
        grid = np.array(args.betas)
    else:
        grid = sampling.default_beta_grid(args.beta_min, args.beta_max, args.points)
    if grid.size == 0:
        raise UsageError("empty beta grid")
    p = _params(args, float(grid[0]))
    scan = sampling.variance_scan(grid, p, args.dt, args.samples, workers=_workers())
    fit = sampling.power_law_fit(scan, args.fit_range) if args.fit_range else None

    out = CsvOut(args.precision)
    out.row("beta", "mu", "sigma2")
    for b, m in scan:
        out.row(b, m.mu, m.sigma2)
    if fit is not None:
        out.comment(f"power_law sigma2=c1*beta^c2 range={fit.beta_range[0]:g}:{fit.beta_range[1]:g}")
        out.comment(f"c1={fit.c1!r} c2={fit.c2!r} residual={fit.residual!r} points={fit.n_points}")
    out.save(args.output)


def cmd_entanglement(args):
    if args.points < 1 or not args.t_max >= 0:
        raise UsageError("--points must be >= 1 and --t-max >= 0")
    for b in args.beta:
        if not b > 0:
            raise ValueError(f"beta must be > 0, got {b}")
    t = np.linspace(0.0, args.t_max, args.points)
    multi = len(args.beta) > 1
    out = CsvOut(args.precision)
    out.row(*((["beta"] if multi else []) + ["t", "p_af", "concurrence", "eof_lower_bound"]))
    for b in args.beta:
        for ti, res in zip(t, entanglement.entanglement_curve(t, b)):
            out.row(*(([b] if multi else []) + [float(ti), res.weight, res.concurrence, res.eof_lower_bound]))
    out.save(args.output)


def cmd_verify(args):
    groups = args.checks.split(",") if args.checks else ["oracle", "invariants"]
    results = verify.run_checks(groups, fock_dim=args.fock_dim, beta=args.beta)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermal-jcm",
        description="Bloch-vector dynamics of a two-level atom in a thermal Jaynes-Cummings field.",
    )
    parser.add_argument(
        "--truncation",
        type=_truncation,
        default=None,
        help="series truncation, fixed:N or adaptive:EPS (default fixed:500 for trajectory, else fixed:1000)",
    )
    parser.add_argument("--precision", type=int, default=12, help="significant digits in CSV output")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, detuning=True):
        p.add_argument("--output", "-o", default=None, help="output CSV path (default stdout)")
        if detuning:
            p.add_argument("--delta-omega", type=float, default=0.0)
            p.add_argument("--g", type=float, default=1.0)
            p.add_argument("--omega0", type=float, default=1.0)

    p = sub.add_parser("trajectory", help="S(t) on a uniform grid")
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--s0", type=_bloch, default=BlochVector(1.0, 0.0, 0.0))
    p.add_argument("--t-max", type=float, default=100.0)
    p.add_argument("--dt", type=float, default=0.01)
    common(p)
    p.set_defaults(func=cmd_trajectory, trunc_default=TruncationPolicy.fixed(500))

    p = sub.add_parser("average", help="closed-form time averages and limits")
    p.add_argument("--beta", type=_float_list, default=[0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
    p.add_argument("--beta-inf", action="store_true", help="emit the beta -> infinity limit")
    p.add_argument("--numeric-check", action="store_true")
    p.add_argument("--s0", type=_bloch, default=BlochVector(0.0, 0.0, 0.0))
    p.add_argument("--t-max", type=float, default=2000.0)
    p.add_argument("--dt", type=float, default=0.05)
    common(p)
    p.set_defaults(func=cmd_average)

    p = sub.add_parser("histogram", help="histogram of sampled S_z with density fit")
    p.add_argument("--beta", type=float, default=10.0)
    p.add_argument("--s0", type=_bloch, default=BlochVector(0.0, 0.0, 0.0))
    p.add_argument("--dt", type=float, default=0.05)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--class-interval", type=float, default=0.005)
    p.add_argument("--fit", choices=["arcsine", "normal", "none"], default="arcsine")
    p.add_argument("--exclude-endpoints", action="store_true", help="drop end bins from the arcsine fit")
    p.add_argument("--fit-output", default=None, help="fit curve CSV (default <output>_fit.csv)")
    common(p)
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("variance-scan", help="sample variance of S_z against beta")
    p.add_argument("--betas", type=_float_list, default=None, help="explicit comma-separated grid")
    p.add_argument("--beta-min", type=float, default=0.01)
    p.add_argument("--beta-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--dt", type=float, default=0.05)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--fit-range", type=_range, default=None, help="LO:HI beta range for the power-law fit")
    common(p)
    p.set_defaults(func=cmd_variance_scan)

    p = sub.add_parser("entanglement", help="projected entanglement lower bound against t")
    p.add_argument("--beta", type=_float_list, default=[10.0, 2.0, 1.0])
    p.add_argument("--t-max", type=float, default=2 * math.pi)
    p.add_argument("--points", type=int, default=600)
    common(p, detuning=False)
    p.set_defaults(func=cmd_entanglement)

    p = sub.add_parser("verify", help="run oracle and invariant checks")
    p.add_argument("--checks", default=None, help="comma-separated groups: oracle,invariants")
    p.add_argument("--fock-dim", type=int, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.truncation is None:
        args.truncation = getattr(args, "trunc_default", TruncationPolicy.fixed(1000))
    try:
        rc = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return int(rc or 0)


if __name__ == "__main__":
    sys.exit(main())
