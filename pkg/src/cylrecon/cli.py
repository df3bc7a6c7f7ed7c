"""Command line interface.

Subcommands: project (collect projection data), reconstruct (evaluate the
expansion on a grid), lebesgue (norm growth study), converge (uniform error
study), phantoms (list the catalog). Exit codes: 0 success, 1 usage error,
2 data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .analysis import convergence_experiment, growth_check, write_convergence_csv, write_growth_csv
from .phantoms import CATALOG, make_phantom
from .radon import DatasetFormatError, collect_projections, read_dataset, write_dataset
from .reconstruct import EvaluationGrid, reconstruct_grid, write_grid_csv


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract here is 1 for usage.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_dims(text: str, flag: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"{flag} expects three comma-separated integers, got {text!r}")
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"{flag} expects integers, got {text!r}") from None
    if min(dims) < 1:
        raise UsageError(f"{flag} dimensions must be positive, got {text!r}")
    return dims


def _parse_ms(text: str) -> list:
    try:
        ms = [int(p) for p in text.split(",") if p.strip() != ""]
    except ValueError:
        raise UsageError(f"--ms expects comma-separated integers, got {text!r}") from None
    if not ms:
        raise UsageError("--ms needs at least one value")
    if any(m < 1 for m in ms) or any(b <= a for a, b in zip(ms, ms[1:])):
        raise UsageError(f"--ms values must be strictly increasing positive integers, got {text!r}")
    return ms


def _check_m(m: int) -> int:
    if m < 1:
        raise UsageError(f"--m must be a positive integer, got {m}")
    return m


def _resolve_phantom(args):
    if args.phantom not in CATALOG:
        raise UsageError(f"unknown phantom {args.phantom!r}; see the phantoms subcommand")
    if args.phantom == "poly" and not args.coeffs:
        raise UsageError("phantom 'poly' requires --coeffs FILE")
    return make_phantom(args.phantom, coeffs_path=args.coeffs)


def _figure_path(out_path: str) -> str:
    stem, _ = os.path.splitext(out_path)
    return (stem or out_path) + ".png"


def cmd_project(args) -> int:
    _check_m(args.m)
    phantom = _resolve_phantom(args)
    dataset = collect_projections(phantom, args.m, order=args.order)
    write_dataset(dataset, args.out)
    print(f"wrote {dataset.row_count} projection rows (m={dataset.m}) to {args.out}")
    return 0


def cmd_reconstruct(args) -> int:
    if args.threads < 1:
        raise UsageError(f"--threads must be positive, got {args.threads}")
    dims = _parse_dims(args.grid, "--grid")
    dataset = read_dataset(args.infile)
    grid = EvaluationGrid.tensor_polar(*dims)
    result = reconstruct_grid(dataset, grid, threads=args.threads)
    write_grid_csv(result, args.out)
    print(f"reconstructed {len(grid)} points (m={dataset.m}) to {args.out}")
    return 0


def cmd_lebesgue(args) -> int:
    ms = _parse_ms(args.ms)
    dims = _parse_dims(args.grid, "--grid")
    report = growth_check(ms, grid_shape=dims)
    print("m,grid_max,normalized,lb_point_value")
    for row in report.rows:
        print(f"{row.m},{row.grid_max:.17g},{row.normalized:.17g},{row.lower_bound_point_value:.17g}")
    verdict = "yes" if report.within_band else "no"
    print(f"normalized band ratio {report.band_ratio:.17g} (within factor 4: {verdict})")
    write_growth_csv(report, args.out)
    if not args.no_plot:
        from .plots import save_growth_figure

        fig_path = _figure_path(args.out)
        save_growth_figure(report, fig_path)
        print(f"figure written to {fig_path}")
    return 0


def cmd_converge(args) -> int:
    ms = _parse_ms(args.ms)
    dims = _parse_dims(args.grid, "--grid")
    if args.threads < 1:
        raise UsageError(f"--threads must be positive, got {args.threads}")
    phantom = _resolve_phantom(args)
    grid = EvaluationGrid.tensor_polar(*dims)
    records = convergence_experiment(phantom, ms, grid=grid, order=args.order, threads=args.threads)
    print("m,uniform_error")
    for rec in records:
        print(f"{rec.m},{rec.uniform_error:.17g}")
    decreasing = all(b.uniform_error < a.uniform_error for a, b in zip(records, records[1:]))
    print(f"errors strictly decreasing: {'yes' if decreasing else 'no'}")
    write_convergence_csv(records, args.out)
    if not args.no_plot:
        from .plots import save_convergence_figure

        fig_path = _figure_path(args.out)
        save_convergence_figure(records, fig_path)
        print(f"figure written to {fig_path}")
    return 0


def cmd_phantoms(args) -> int:
    for name in sorted(CATALOG):
        print(f"{name}: {CATALOG[name]}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cylrecon", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("project", parents=[], help="collect projection data for a phantom", add_help=True)
    p.add_argument("--phantom", default="const1", help="catalog id (see the phantoms subcommand)")
    p.add_argument("--m", type=int, required=True, help="degree parameter, m >= 1")
    p.add_argument("--coeffs", help="coefficient file for the poly phantom (rows a,b,c,coeff)")
    p.add_argument("--order", type=int, default=None, help="Gauss-Legendre order per chord")
    p.add_argument("--out", required=True, help="output dataset path")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("reconstruct", help="evaluate the expansion on a grid")
    p.add_argument("--in", dest="infile", required=True, help="input dataset (cyl-radon-v1)")
    p.add_argument("--grid", default="8,16,9", help="tensor grid as nr,ntheta,nz")
    p.add_argument("--threads", type=int, default=1, help="worker threads")
    p.add_argument("--out", required=True, help="output grid CSV path")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("lebesgue", help="norm growth study over a list of m")
    p.add_argument("--ms", required=True, help="strictly increasing m list, e.g. 2,4,8,16")
    p.add_argument("--grid", default="12,24,16", help="norm grid as n_radii,n_angles,n_z")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p.set_defaults(func=cmd_lebesgue)

    p = sub.add_parser("converge", help="uniform error study for a phantom")
    p.add_argument("--phantom", default="cosine-exp", help="catalog id")
    p.add_argument("--coeffs", help="coefficient file for the poly phantom")
    p.add_argument("--ms", required=True, help="strictly increasing m list, e.g. 2,4,8")
    p.add_argument("--grid", default="5,8,5", help="tensor grid as nr,ntheta,nz")
    p.add_argument("--order", type=int, default=None, help="Gauss-Legendre order per chord")
    p.add_argument("--threads", type=int, default=1, help="worker threads")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("phantoms", help="list the phantom catalog")
    p.set_defaults(func=cmd_phantoms)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DatasetFormatError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
