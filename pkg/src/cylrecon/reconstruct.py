"""Evaluation of the discrete expansions from projection data.

disk_expansion consumes one slice of projections (a single z level, or a
function on the disk) and evaluates the two-variable discrete expansion.
cylinder_expansion and reconstruct_grid consume a full ProjectionDataset.
reference_partial_sum evaluates the same truncation of the continuous
expansion with dense Gauss-Legendre quadrature instead of the finite data;
it is the slow oracle the discrete operator is checked against.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .chebyshev import chebyshev_u_all
from .kernel import AngleSet, angle_set, kernel_block
from .radon import GEOM_TOL, ProjectionDataset, projection_angles

__all__ = [
    "EvaluationGrid",
    "ReconstructionResult",
    "cylinder_expansion",
    "disk_expansion",
    "reconstruct_grid",
    "reference_partial_sum",
    "write_grid_csv",
]

# Points per work unit when a grid is split across threads. Fixed so the
# per-point arithmetic never depends on the thread count.
_CHUNK = 32


@dataclass
class EvaluationGrid:
    """Points (x, y, z) inside the closed cylinder, shape (n, 3)."""

    points: np.ndarray
    description: str = "explicit"

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, 3)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError(f"points must have shape (n, 3), got {pts.shape}")
        r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
        if np.any(r2 > 1.0 + GEOM_TOL) or np.any(np.abs(pts[:, 2]) > 1.0 + GEOM_TOL):
            raise ValueError("grid contains points outside the closed cylinder")
        self.points = pts

    @classmethod
    def explicit(cls, points) -> "EvaluationGrid":
        return cls(np.asarray(points, dtype=float), "explicit")

    @classmethod
    def tensor_polar(cls, n_r: int, n_theta: int, n_z: int) -> "EvaluationGrid":
        """Product grid: n_r radii (i+1)/n_r, n_theta uniform angles, n_z heights.

        Heights are linspace(-1, 1, n_z), or just 0 when n_z = 1. Point order
        is radius-major, then angle, then height.
        """
        if min(n_r, n_theta, n_z) < 1:
            raise ValueError("grid dimensions must be positive")
        radii = (np.arange(n_r) + 1.0) / n_r
        angs = 2.0 * np.pi * np.arange(n_theta) / n_theta
        heights = np.array([0.0]) if n_z == 1 else np.linspace(-1.0, 1.0, n_z)
        pts = [
            (r * np.cos(a), r * np.sin(a), z)
            for r in radii
            for a in angs
            for z in heights
        ]
        return cls(np.asarray(pts), "tensor-polar")

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass
class ReconstructionResult:
    grid: EvaluationGrid
    values: np.ndarray
    m: int
    method: str


def disk_expansion(projections, x: float, y: float) -> float:
    """Discrete expansion on the disk from one projection matrix.

    projections[nu, j-1] holds the chord integrals at direction nu and
    offset t_j; the shape (2m+1, 2m) determines m. The value at (x, y) is
    the data contracted against (k+1) sin((k+1) theta_j) U_k(cos sigma_nu)
    over k = 0..2m, scaled by 1/(2m+1)^2.
    """
    data = np.asarray(projections, dtype=float)
    if data.ndim != 2 or data.shape[1] % 2 or data.shape[0] != data.shape[1] + 1:
        raise ValueError(f"projection matrix must have shape (2m+1, 2m), got {data.shape}")
    m = data.shape[1] // 2
    if x * x + y * y > 1.0 + GEOM_TOL:
        raise ValueError(f"point ({x}, {y}) outside the unit disk")
    angles = angle_set(m)
    cos_sigma = np.clip(x * np.cos(angles.phi) + y * np.sin(angles.phi), -1.0, 1.0)
    ridge = chebyshev_u_all(2 * m, cos_sigma).T
    total = np.einsum("nj,jk,nk->", data, angles.sin_factors, ridge)
    return float(total / (2 * m + 1) ** 2)


def cylinder_expansion(dataset: ProjectionDataset, x: float, y: float, z: float) -> float:
    """Discrete expansion on the cylinder at one point."""
    angles = angle_set(dataset.m)
    block, _ = kernel_block(angles, x, y, z)
    return float(np.dot(dataset.values.ravel(), block.ravel()))


def _eval_range(dataset, angles, pts, out, lo, hi):
    for i in range(lo, hi):
        block, _ = kernel_block(angles, pts[i, 0], pts[i, 1], pts[i, 2])
        out[i] = np.dot(dataset.values.ravel(), block.ravel())


def reconstruct_grid(dataset: ProjectionDataset, grid: EvaluationGrid, threads: int = 1) -> ReconstructionResult:
    """Evaluate the discrete expansion on a grid.

    threads > 1 splits the grid into fixed-size chunks over a thread pool;
    every point is computed by identical arithmetic, so the values (and any
    file written from them) are bit-identical for every thread count.
    """
    if not isinstance(threads, (int, np.integer)) or threads < 1:
        raise ValueError(f"threads must be a positive integer, got {threads!r}")
    angles = angle_set(dataset.m)
    pts = grid.points
    out = np.empty(len(grid))
    spans = [(lo, min(lo + _CHUNK, len(grid))) for lo in range(0, len(grid), _CHUNK)]
    if threads == 1 or len(spans) <= 1:
        for lo, hi in spans:
            _eval_range(dataset, angles, pts, out, lo, hi)
    else:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            futures = [pool.submit(_eval_range, dataset, angles, pts, out, lo, hi) for lo, hi in spans]
            for fut in futures:
                fut.result()
    return ReconstructionResult(grid, out, dataset.m, "discrete")


def reference_partial_sum(f, m: int, x: float, y: float, z: float, dense_order: int | None = None) -> float:
    """Truncation of the continuous expansion with dense quadrature.

    The projection average over offsets and heights is computed as a double
    integral in the substituted angle variables, discretized with
    dense_order-point Gauss-Legendre on [0, pi] in each (all integrands are
    trigonometric polynomials, so convergence is immediate once dense_order
    exceeds the trig degree). No Chebyshev node family is involved, which
    is what makes this an independent check of the discrete operator.
    """
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ValueError(f"degree parameter m must be a positive integer, got {m!r}")
    if dense_order is None:
        dense_order = 4 * m + 16
    if dense_order < 4 * m + 2:
        raise ValueError(f"dense_order must be at least {4 * m + 2} for m={m}")
    if x * x + y * y > 1.0 + GEOM_TOL or abs(z) > 1.0 + GEOM_TOL:
        raise ValueError(f"point ({x}, {y}, {z}) outside the closed cylinder")

    u, w = leggauss(int(dense_order))
    psi = (u + 1.0) * (np.pi / 2.0)
    wpsi = w * (np.pi / 2.0)
    chi, wchi = psi, wpsi
    offsets = np.cos(psi)
    heights = np.cos(chi)
    phi = projection_angles(m)

    # projection table R[nu, a, b] over directions x offsets x heights
    half = np.sin(psi)
    s = half[:, None] * u[None, :]
    xs = offsets[None, :, None] * np.cos(phi)[:, None, None] - s[None] * np.sin(phi)[:, None, None]
    ys = offsets[None, :, None] * np.sin(phi)[:, None, None] + s[None] * np.cos(phi)[:, None, None]
    vals = f(xs[..., None], ys[..., None], heights[None, None, None, :])
    proj = half[None, :, None] * np.einsum("q,naqb->nab", w, vals)

    k = np.arange(2 * m + 1)
    offset_factors = (k + 1) * np.sin(np.outer(psi, k + 1))  # (a, k)
    cos_sigma = np.clip(x * np.cos(phi) + y * np.sin(phi), -1.0, 1.0)
    ridge = chebyshev_u_all(2 * m, cos_sigma).T  # (nu, k)
    # z tails: cumulative orthonormal first-kind products, cut at 2m - k
    r = np.arange(2 * m + 1)
    gz = np.arccos(min(1.0, max(-1.0, float(z))))
    tz = np.sqrt(2.0) * np.cos(r * gz)
    tz[0] = 1.0
    th = np.sqrt(2.0) * np.cos(np.outer(chi, r))
    th[:, 0] = 1.0
    tails = np.cumsum(th * tz[None, :], axis=1)[:, 2 * m - k]  # (b, k)

    mixed = np.einsum("nk,ak,bk->nab", ridge, offset_factors, tails)
    total = np.einsum("nab,a,b,nab->", proj, wpsi, wchi, mixed)
    return float(total / ((2 * m + 1) * np.pi**2))


def write_grid_csv(result: ReconstructionResult, path) -> None:
    """Write a grid result: JSON header line, then x,y,z,value rows (%.17g)."""
    lines = [json.dumps({"m": result.m, "method": result.method})]
    for (x, y, z), v in zip(result.grid.points, result.values):
        lines.append(f"{x:.17g},{y:.17g},{z:.17g},{v:.17g}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
