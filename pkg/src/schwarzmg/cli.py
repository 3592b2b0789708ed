"""Command-line experiment driver: Fourier-analysis sweeps, measured multigrid
solves, and the bundled verification suite, all emitting CSV.

Exit codes: 0 on success, 2 on an invalid experiment specification, 1 when a
verification check fails.
"""

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import pi

import numpy as np

from .lfa import (
    smoothing_factor,
    symbol_line_x,
    symbol_schwarz_2x2,
    symbol_schwarz_ellx1,
    two_grid_factor,
    two_grid_symbol,
)
from .model import fd_stencil, fe_stencil, pde_coefficients
from .multigrid import build_hierarchy, measure_convergence
from .schwarz import SchwarzConfig
from .verification import run_checks

__all__ = ["ExperimentSpec", "main", "run_lfa_smoothing", "run_lfa_twogrid", "run_solve", "run_verify"]

_STENCILS = {"fd": fd_stencil, "fe": fe_stencil}


class SpecError(ValueError):
    """Invalid experiment specification (maps to exit code 2)."""


@dataclass
class ExperimentSpec:
    """Fully resolved parameters of one experiment sweep."""

    disc: str = "fd"
    epsilons: list = field(default_factory=lambda: list(np.logspace(-4, 0, 17)))
    thetas: list = field(default_factory=lambda: list(np.linspace(0.0, pi / 2, 17)))
    ells: list = field(default_factory=lambda: [1])
    ms: list = field(default_factory=lambda: [1])
    overlap_x: int = None
    overlap_y: int = None
    weight: float = 1.0
    smoother: str = "schwarz"
    cycle: str = "v"
    n0: int = 128
    levels: int = None
    max_iters: int = 100
    rtol: float = 1e-30
    seed: int = 0
    jobs: int = 1

    def validate(self):
        if self.disc not in _STENCILS:
            raise SpecError("disc must be fd or fe, got %r" % (self.disc,))
        if not self.epsilons or not self.thetas or not self.ells or not self.ms:
            raise SpecError("parameter lists must be nonempty")
        for eps in self.epsilons:
            if not 0.0 < eps <= 1.0:
                raise SpecError("epsilon must lie in (0, 1], got %r" % (eps,))
        for theta in self.thetas:
            if not 0.0 <= theta <= pi / 2 + 1e-12:
                raise SpecError("theta must lie in [0, pi/2], got %r" % (theta,))
        for ell in self.ells + self.ms:
            if ell < 1:
                raise SpecError("block dimensions must be >= 1")
        if self.weight <= 0.0:
            raise SpecError("weight must be positive")
        if self.smoother not in ("schwarz", "line", "none"):
            raise SpecError("smoother must be schwarz, line, or none")
        if self.cycle not in ("v", "w", "tg"):
            raise SpecError("cycle must be v, w, or tg")
        return self


def _symbol_fn(spec, stencil, ell, m):
    """Smoother symbol for one parameter cell, or None for 'none'."""
    if spec.smoother == "none":
        return None
    if spec.smoother == "line":
        return lambda w1, w2: symbol_line_x(stencil, w1, w2)
    if m == 1:
        return lambda w1, w2: symbol_schwarz_ellx1(stencil, w1, w2, ell, spec.weight)
    if (ell, m) == (2, 2):
        return lambda w1, w2: symbol_schwarz_2x2(stencil, w1, w2, spec.weight)
    raise SpecError("Fourier symbols support ell x 1 and 2 x 2 blocks, got %dx%d" % (ell, m))


def _block_label(spec, ell, m):
    return "line" if spec.smoother == "line" else "%dx%d" % (ell, m)


def _cells(spec):
    return [
        (eps, theta, ell, m)
        for eps in spec.epsilons
        for theta in spec.thetas
        for ell in spec.ells
        for m in spec.ms
    ]


def _map_cells(spec, worker):
    cells = [(spec, c) for c in _cells(spec)]
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            return list(pool.map(worker, cells))
    return [worker(c) for c in cells]


def _smoothing_cell(args):
    spec, (eps, theta, ell, m) = args
    stencil = _STENCILS[spec.disc](pde_coefficients(eps, theta))
    mu = smoothing_factor(_symbol_fn(spec, stencil, ell, m))
    return [spec.disc, repr(eps), repr(theta), _block_label(spec, ell, m),
            ell, m, repr(spec.weight), "%.6f" % mu]


def run_lfa_smoothing(spec):
    """Smoothing-factor sweep; returns (header, rows)."""
    if spec.smoother == "none":
        raise SpecError("smoothing factors require a smoother (schwarz or line)")
    header = ["disc", "epsilon", "theta", "block", "ell", "m", "weight", "mu"]
    return header, _map_cells(spec, _smoothing_cell)


def _twogrid_cell(args):
    spec, (eps, theta, ell, m) = args
    stencil = _STENCILS[spec.disc](pde_coefficients(eps, theta))
    fn = _symbol_fn(spec, stencil, ell, m)
    rho = two_grid_factor(stencil, fn)
    grid = np.linspace(-pi / 2, pi / 2, 129)
    ww1, ww2 = np.meshgrid(grid, grid, indexing="ij")
    excluded = int(two_grid_symbol(stencil, fn, ww1, ww2).excluded.sum())
    return [spec.disc, repr(eps), repr(theta), _block_label(spec, ell, m),
            ell, m, repr(spec.weight), "%.6f" % rho, excluded]


def run_lfa_twogrid(spec):
    """Two-grid convergence-factor sweep; returns (header, rows)."""
    header = ["disc", "epsilon", "theta", "block", "ell", "m", "weight", "rho_tg", "excluded"]
    return header, _map_cells(spec, _twogrid_cell)


def _solve_cell(args):
    spec, (eps, theta, ell, m) = args
    if spec.smoother != "schwarz":
        raise SpecError("measured solves use the schwarz smoother")
    stencil = _STENCILS[spec.disc](pde_coefficients(eps, theta))
    ox = ell - 1 if spec.overlap_x is None else spec.overlap_x
    oy = m - 1 if spec.overlap_y is None else spec.overlap_y
    try:
        config = SchwarzConfig(block=(ell, m), overlap=(ox, oy), weight=spec.weight)
        hierarchy = build_hierarchy(stencil, spec.n0, config, levels=spec.levels)
    except ValueError as exc:
        raise SpecError(str(exc))
    report = measure_convergence(
        hierarchy, kind=spec.cycle, seed=spec.seed,
        max_iters=spec.max_iters, tol=spec.rtol,
    )
    return [spec.n0, spec.cycle, spec.disc, repr(eps), repr(theta), ell, m, ox, oy,
            report.iterations, "%.6f" % report.rho, spec.seed, report.reason]


def run_solve(spec):
    """Measured multigrid convergence sweep; returns (header, rows)."""
    header = ["n0", "cycle", "disc", "epsilon", "theta", "ell", "m",
              "overlap_x", "overlap_y", "iters", "rho_measured", "seed", "reason"]
    return header, _map_cells(spec, _solve_cell)


def run_verify(level):
    """Run the verification suite; returns (header, rows, all_passed)."""
    results = run_checks(level)
    header = ["check", "passed", "value", "detail"]
    rows = [[r.name, "pass" if r.passed else "FAIL", r.value, r.detail] for r in results]
    return header, rows, all(r.passed for r in results)


def _write_csv(out_path, header, rows):
    handle = sys.stdout if out_path in (None, "-") else open(out_path, "w", newline="")
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if handle is not sys.stdout:
            handle.close()


def _add_common(parser):
    parser.add_argument("--disc", choices=("fd", "fe"), default="fd")
    parser.add_argument("--eps", type=float, nargs="+", metavar="E",
                        help="explicit anisotropy ratios (default: 17 log-spaced in [1e-4, 1])")
    parser.add_argument("--eps-range", type=float, nargs=3, metavar=("LO", "HI", "N"),
                        help="log-equispaced anisotropy ratios")
    parser.add_argument("--theta", type=float, nargs="+", metavar="T",
                        help="explicit rotation angles (default: 17 equispaced in [0, pi/2])")
    parser.add_argument("--theta-range", type=float, nargs=3, metavar=("LO", "HI", "N"),
                        help="equispaced rotation angles")
    parser.add_argument("--ell", type=int, nargs="+", default=[1], help="block x-extents")
    parser.add_argument("--m", type=int, nargs="+", default=[1], help="block y-extents")
    parser.add_argument("--overlap-x", type=int, default=None,
                        help="x overlap (default: ell - 1, maximal)")
    parser.add_argument("--overlap-y", type=int, default=None,
                        help="y overlap (default: m - 1, maximal)")
    parser.add_argument("--weight", type=float, default=1.0)
    parser.add_argument("--smoother", choices=("schwarz", "line", "none"), default="schwarz")
    parser.add_argument("--cycle", choices=("v", "w", "tg"), default="v")
    parser.add_argument("--n0", type=int, default=128, help="finest grid intervals per side")
    parser.add_argument("--levels", type=int, default=None)
    parser.add_argument("--max-iters", type=int, default=100)
    parser.add_argument("--rtol", type=float, default=1e-30)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    parser.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")


def _spec_from_args(args):
    spec = ExperimentSpec(
        disc=args.disc,
        ells=list(args.ell),
        ms=list(args.m),
        overlap_x=args.overlap_x,
        overlap_y=args.overlap_y,
        weight=args.weight,
        smoother=args.smoother,
        cycle=args.cycle,
        n0=args.n0,
        levels=args.levels,
        max_iters=args.max_iters,
        rtol=args.rtol,
        seed=args.seed,
        jobs=args.jobs,
    )
    if args.eps is not None and args.eps_range is not None:
        raise SpecError("--eps and --eps-range are mutually exclusive")
    if args.eps is not None:
        spec.epsilons = list(args.eps)
    elif args.eps_range is not None:
        lo, hi, count = args.eps_range
        spec.epsilons = list(np.logspace(np.log10(lo), np.log10(hi), int(count)))
    if args.theta is not None and args.theta_range is not None:
        raise SpecError("--theta and --theta-range are mutually exclusive")
    if args.theta is not None:
        spec.thetas = list(args.theta)
    elif args.theta_range is not None:
        lo, hi, count = args.theta_range
        spec.thetas = list(np.linspace(lo, hi, int(count)))
    return spec.validate()


def build_parser():
    parser = argparse.ArgumentParser(
        prog="schwarzmg",
        description="Multigrid with overlapping Schwarz smoothers: "
                    "Fourier-analysis sweeps, measured solves, verification.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, doc in (
        ("run_lfa_smoothing", "smoothing-factor sweep over the parameter grid"),
        ("run_lfa_twogrid", "two-grid convergence-factor sweep"),
        ("run_solve", "measured multigrid convergence sweep"),
    ):
        p = sub.add_parser(name, help=doc)
        _add_common(p)
    v = sub.add_parser("run_verify", help="run the bundled verification checks")
    v.add_argument("level", choices=("quick", "full"))
    v.add_argument("--out", default="-")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "run_verify":
            header, rows, ok = run_verify(args.level)
            _write_csv(args.out, header, rows)
            return 0 if ok else 1
        spec = _spec_from_args(args)
        runner = {
            "run_lfa_smoothing": run_lfa_smoothing,
            "run_lfa_twogrid": run_lfa_twogrid,
            "run_solve": run_solve,
        }[args.subcommand]
        header, rows = runner(spec)
    except SpecError as exc:
        parser.exit(2, "error: %s\n" % (exc,))
    _write_csv(args.out, header, rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
