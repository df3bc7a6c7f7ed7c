"""Operator norm estimation and convergence experiments.

The Lebesgue function 2 sum_{nu,j,l} sin(theta_j) |T[nu,j,l](p)| bounds the
operator norm from below at every point p; its maximum over an evaluation
grid estimates the norm, expected to grow like m (log(m+1))^2. The point
(cos(pi/(4m+2)), sin(pi/(4m+2)), 1) is a rim point where the growth is
provably attained, so it is always included.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel import angle_set, kernel_block
from .radon import collect_projections
from .reconstruct import EvaluationGrid, reconstruct_grid

__all__ = [
    "ConvergenceRecord",
    "GrowthReport",
    "LebesgueEstimate",
    "convergence_experiment",
    "growth_check",
    "lebesgue_norm_estimate",
    "lebesgue_sum",
    "lebesgue_sums",
    "lower_bound_point",
    "norm_estimation_grid",
    "write_convergence_csv",
    "write_growth_csv",
]


def lower_bound_point(m: int):
    """Rim point (cos(pi/(4m+2)), sin(pi/(4m+2)), 1) witnessing norm growth."""
    if m < 1:
        raise ValueError(f"degree parameter m must be >= 1, got {m}")
    a = np.pi / (4 * m + 2)
    return (float(np.cos(a)), float(np.sin(a)), 1.0)


def lebesgue_sum(x: float, y: float, z: float, m: int) -> float:
    """Lebesgue function at one point: 2 sum sin(theta_j) |T[nu,j,l]|."""
    angles = angle_set(m)
    block, _ = kernel_block(angles, x, y, z)
    return 2.0 * float(np.einsum("j,njl->", np.sin(angles.theta), np.abs(block)))


def lebesgue_sums(points, m: int) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    angles = angle_set(m)
    sin_theta = np.sin(angles.theta)
    out = np.empty(pts.shape[0])
    for i, (x, y, z) in enumerate(pts):
        block, _ = kernel_block(angles, x, y, z)
        out[i] = 2.0 * np.einsum("j,njl->", sin_theta, np.abs(block))
    return out


def norm_estimation_grid(m: int, n_radii: int = 12, n_angles: int = 24, n_z: int = 16) -> EvaluationGrid:
    """Grid tuned for norm estimation: rim-clustered radii, picked heights.

    Radii sin((i+1) pi / (2 n_radii)) cluster at the rim where the Lebesgue
    function peaks. Heights take +-1 plus midpoints between consecutive
    slice nodes (where the z tails are largest), evenly subsampled if there
    are more midpoints than n_z - 2 slots. The rim lower-bound point is
    always appended.
    """
    if min(n_radii, n_angles, n_z) < 2:
        raise ValueError("norm grid needs at least 2 subdivisions per axis")
    angles = angle_set(m)
    radii = np.sin((np.arange(n_radii) + 1) * np.pi / (2 * n_radii))
    angs = 2.0 * np.pi * np.arange(n_angles) / n_angles
    mids = np.cos((angles.gamma[:-1] + angles.gamma[1:]) / 2.0)
    if mids.size > n_z - 2:
        pick = np.unique(np.linspace(0, mids.size - 1, n_z - 2).round().astype(int))
        mids = mids[pick]
    heights = np.concatenate(([1.0], mids, [-1.0]))
    pts = [
        (r * np.cos(a), r * np.sin(a), z)
        for r in radii
        for a in angs
        for z in heights
    ]
    pts.append(lower_bound_point(m))
    grid = EvaluationGrid(np.asarray(pts), "norm-estimation")
    return grid


@dataclass
class LebesgueEstimate:
    m: int
    grid_max: float
    argmax_point: tuple
    lower_bound_point_value: float
    normalized: float


def lebesgue_norm_estimate(m: int, grid: EvaluationGrid | None = None) -> LebesgueEstimate:
    """Largest Lebesgue sum over the grid, normalized by m (log(m+1))^2.

    The rim lower-bound point is always evaluated, so grid_max dominates
    the lower-bound value by construction.
    """
    if grid is None:
        grid = norm_estimation_grid(m)
    lbp = lower_bound_point(m)
    lb_value = lebesgue_sum(*lbp, m)
    grid_max, argmax = lb_value, lbp
    if len(grid):
        sums = lebesgue_sums(grid.points, m)
        i = int(np.argmax(sums))
        if sums[i] > grid_max:
            grid_max, argmax = float(sums[i]), tuple(grid.points[i])
    return LebesgueEstimate(
        m=m,
        grid_max=grid_max,
        argmax_point=tuple(float(c) for c in argmax),
        lower_bound_point_value=lb_value,
        normalized=grid_max / (m * np.log(m + 1) ** 2),
    )


@dataclass
class GrowthReport:
    rows: list
    band_ratio: float
    within_band: bool


def growth_check(ms, grid_shape: tuple = (12, 24, 16)) -> GrowthReport:
    """Norm estimates for increasing m plus a factor-4 flatness check.

    The normalized values across the m list should agree within a mutual
    factor of 4 if the m (log(m+1))^2 growth law is right; within_band
    reports that, and band_ratio is max/min of the normalized column.
    """
    ms = [int(m) for m in ms]
    if not ms or any(m < 1 for m in ms) or any(b <= a for a, b in zip(ms, ms[1:])):
        raise ValueError(f"m values must be strictly increasing positive integers, got {ms}")
    n_radii, n_angles, n_z = grid_shape
    rows = [lebesgue_norm_estimate(m, norm_estimation_grid(m, n_radii, n_angles, n_z)) for m in ms]
    normed = [row.normalized for row in rows]
    ratio = max(normed) / min(normed)
    return GrowthReport(rows=rows, band_ratio=float(ratio), within_band=bool(ratio <= 4.0))


@dataclass
class ConvergenceRecord:
    m: int
    uniform_error: float
    phantom: str


def convergence_experiment(phantom, ms, grid: EvaluationGrid | None = None,
                           order: int | None = None, threads: int = 1) -> list:
    """Uniform reconstruction error of a phantom for increasing m.

    For smooth non-polynomial phantoms the errors should decrease strictly;
    for polynomials of degree <= 2m-1 they sit at rounding level.
    """
    ms = [int(m) for m in ms]
    if not ms or any(m < 1 for m in ms) or any(b <= a for a, b in zip(ms, ms[1:])):
        raise ValueError(f"m values must be strictly increasing positive integers, got {ms}")
    if grid is None:
        grid = EvaluationGrid.tensor_polar(5, 8, 5)
    if len(grid) == 0:
        raise ValueError("convergence experiment needs a nonempty grid")
    pts = grid.points
    exact = np.asarray(phantom(pts[:, 0], pts[:, 1], pts[:, 2]), dtype=float)
    name = getattr(phantom, "name", "phantom")
    records = []
    for m in ms:
        dataset = collect_projections(phantom, m, order)
        result = reconstruct_grid(dataset, grid, threads=threads)
        err = float(np.max(np.abs(result.values - exact)))
        records.append(ConvergenceRecord(m=m, uniform_error=err, phantom=name))
    return records


def write_growth_csv(report: GrowthReport, path) -> None:
    lines = ["m,grid_max,normalized,argmax_x,argmax_y,argmax_z,lb_point_value"]
    for row in report.rows:
        ax, ay, az = row.argmax_point
        lines.append(
            f"{row.m},{row.grid_max:.17g},{row.normalized:.17g},"
            f"{ax:.17g},{ay:.17g},{az:.17g},{row.lower_bound_point_value:.17g}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def write_convergence_csv(records, path) -> None:
    lines = ["m,uniform_error,phantom"]
    for rec in records:
        lines.append(f"{rec.m},{rec.uniform_error:.17g},{rec.phantom}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
