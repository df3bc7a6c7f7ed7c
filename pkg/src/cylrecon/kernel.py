"""Point-evaluation kernels of the discrete cylinder expansion.

For the degree parameter m the reconstruction at a point is a weighted sum
of the projection data against kernel cells T[nu, j, l](x, y, z). Each cell
couples a ridge factor in the disk variables with a Chebyshev tail sum in
z. Two evaluation routes are provided: direct double summation over the
(total degree, ridge degree) index pairs, and a compact form that collapses
the z tail with the Christoffel-Darboux identity. The compact route divides
by z - z_l and falls back to direct summation when the two are close.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chebyshev import chebyshev_u_all

__all__ = [
    "AngleSet",
    "CD_TOL",
    "KernelEvaluation",
    "angle_set",
    "kernel_block",
    "kernel_compact",
    "kernel_direct",
    "kernel_norm_constant",
    "lebesgue_cell",
    "ridge_angle",
]

GEOM_TOL = 1e-12

# Below this |z - z_l| the Christoffel-Darboux quotient loses digits.
CD_TOL = 1e-7

SQRT2 = np.sqrt(2.0)


class AngleSet:
    """Sampling geometry tables for a degree parameter m.

    phi[nu] = 2 pi nu/(2m+1), nu = 0..2m       (projection directions)
    theta[j-1] = j pi/(2m+1), j = 1..2m        (chord offset angles)
    gamma[l] = (2l+1) pi/(4m), l = 0..2m-1     (slice height angles)
    z_nodes[l] = cos(gamma[l])                 (slice heights)

    Instances are immutable and safe to share between threads.
    """

    def __init__(self, m: int):
        if not isinstance(m, (int, np.integer)) or m < 1:
            raise ValueError(f"degree parameter m must be a positive integer, got {m!r}")
        self.m = int(m)
        nu = np.arange(2 * m + 1)
        j = np.arange(1, 2 * m + 1)
        l = np.arange(2 * m)
        self.phi = 2.0 * np.pi * nu / (2 * m + 1)
        self.theta = j * np.pi / (2 * m + 1)
        self.gamma = (2 * l + 1) * np.pi / (4 * m)
        self.z_nodes = np.cos(self.gamma)
        k = np.arange(2 * m + 1)
        # (k+1) sin((k+1) theta_j), shape (2m, 2m+1)
        self.sin_factors = (k + 1) * np.sin(np.outer(self.theta, k + 1))
        # cos(a gamma_l) for a = 0..2m+1, shape (2m, 2m+2)
        self.cos_gamma = np.cos(np.outer(self.gamma, np.arange(2 * m + 2)))
        for arr in (self.phi, self.theta, self.gamma, self.z_nodes, self.sin_factors, self.cos_gamma):
            arr.flags.writeable = False

    def __repr__(self):
        return f"AngleSet(m={self.m})"


@lru_cache(maxsize=32)
def angle_set(m: int) -> AngleSet:
    return AngleSet(m)


def kernel_norm_constant(m: int) -> float:
    """Normalization making the expansion reproduce constants exactly.

    The value 1/(2m (2m+1)^2) combines the direction and offset averaging
    with the weight of the 2m-node height rule; it is pinned by the
    requirement that the reconstruction of f = 1 equal 1.
    """
    if m < 1:
        raise ValueError(f"degree parameter m must be >= 1, got {m}")
    return 1.0 / ((2 * m + 1) ** 2 * (2 * m))


def _check_cell(angles: AngleSet, nu: int, j: int, l: int) -> None:
    m = angles.m
    if not 0 <= nu <= 2 * m:
        raise ValueError(f"direction index nu={nu} outside 0..{2 * m}")
    if not 1 <= j <= 2 * m:
        raise ValueError(f"offset index j={j} outside 1..{2 * m}")
    if not 0 <= l <= 2 * m - 1:
        raise ValueError(f"slice index l={l} outside 0..{2 * m - 1}")


def _check_point(x: float, y: float, z: float | None = None) -> None:
    if x * x + y * y > 1.0 + GEOM_TOL:
        raise ValueError(f"point ({x}, {y}) outside the unit disk")
    if z is not None and abs(z) > 1.0 + GEOM_TOL:
        raise ValueError(f"height z={z} outside [-1, 1]")


def ridge_angle(x: float, y: float, nu: int, angles: AngleSet) -> float:
    """Angle sigma in [0, pi] with cos(sigma) = x cos(phi_nu) + y sin(phi_nu).

    cos(sigma) is the coordinate of (x, y) along the projection direction
    nu; it is the argument the ridge factors are evaluated at.
    """
    _check_point(x, y)
    if not 0 <= nu <= 2 * angles.m:
        raise ValueError(f"direction index nu={nu} outside 0..{2 * angles.m}")
    dot = x * np.cos(angles.phi[nu]) + y * np.sin(angles.phi[nu])
    return float(np.arccos(min(1.0, max(-1.0, dot))))


@dataclass(frozen=True)
class KernelEvaluation:
    """Kernel cell value plus how it was computed.

    condition_flag is True when the compact route hit the removable
    singularity guard (|z - z_l| < CD_TOL) and the value was produced by
    direct summation instead.
    """

    value: float
    method: str
    condition_flag: bool


def _t_orthonormal_table(angle: float, rmax: int) -> np.ndarray:
    # orthonormal first-kind values at cos(angle): 1, sqrt2 cos(r angle)
    r = np.arange(rmax + 1)
    table = SQRT2 * np.cos(r * angle)
    table[0] = 1.0
    return table


def kernel_direct(nu: int, j: int, l: int, x: float, y: float, z: float, angles: AngleSet) -> KernelEvaluation:
    """Kernel cell by direct summation over (n, k), n = 0..2m, k = 0..n.

    Each term is (k+1) sin((k+1) theta_j) U_k(cos sigma_nu) times the
    degree n-k orthonormal first-kind factors at z_l and z. The ridge
    factors come from the recurrence, so sigma at 0 or pi needs no special
    handling.
    """
    _check_cell(angles, nu, j, l)
    _check_point(x, y, z)
    m = angles.m
    sigma = ridge_angle(x, y, nu, angles)
    ridge = chebyshev_u_all(2 * m, np.cos(sigma))[:, 0]
    gz = np.arccos(min(1.0, max(-1.0, z)))
    tz = _t_orthonormal_table(gz, 2 * m)
    tzl = _t_orthonormal_table(angles.gamma[l], 2 * m)
    theta_j = angles.theta[j - 1]
    total = 0.0
    for n in range(2 * m + 1):
        for k in range(n + 1):
            total += (k + 1) * np.sin((k + 1) * theta_j) * ridge[k] * tz[n - k] * tzl[n - k]
    return KernelEvaluation(kernel_norm_constant(m) * total, "direct", False)


def kernel_compact(nu: int, j: int, l: int, x: float, y: float, z: float, angles: AngleSet) -> KernelEvaluation:
    """Kernel cell with the z tail collapsed by Christoffel-Darboux.

    sum_{r=0}^{N} of the orthonormal first-kind products at (z, z_l) equals
    [T_{N+1}(z) T_N(z_l) - T_N(z) T_{N+1}(z_l)] / (z - z_l), leaving a
    single sum over the ridge degree k with N = 2m - k. Within CD_TOL of a
    height node the quotient is abandoned for kernel_direct and
    condition_flag is set.
    """
    _check_cell(angles, nu, j, l)
    _check_point(x, y, z)
    m = angles.m
    zl = angles.z_nodes[l]
    if abs(z - zl) < CD_TOL:
        direct = kernel_direct(nu, j, l, x, y, z, angles)
        return KernelEvaluation(direct.value, "compact", True)
    sigma = ridge_angle(x, y, nu, angles)
    ridge = chebyshev_u_all(2 * m, np.cos(sigma))[:, 0]
    gz = np.arccos(min(1.0, max(-1.0, z)))
    a = np.arange(2 * m + 2)
    cz = np.cos(a * gz)
    cl = angles.cos_gamma[l]
    k = np.arange(2 * m + 1)
    n_tail = 2 * m - k
    quot = (cz[n_tail + 1] * cl[n_tail] - cz[n_tail] * cl[n_tail + 1]) / (z - zl)
    total = float(np.dot(angles.sin_factors[j - 1] * ridge, quot))
    return KernelEvaluation(kernel_norm_constant(m) * total, "compact", False)


def kernel_block(angles: AngleSet, x: float, y: float, z: float):
    """All kernel cells at one point: array (2m+1, 2m, 2m) and fallback flag.

    Vectorized equivalent of kernel_compact over every (nu, j, l); height
    nodes within CD_TOL of z get their column from cumulative direct sums.
    The arithmetic per point is independent of any batching, so results are
    reproducible across thread counts.
    """
    _check_point(x, y, z)
    m = angles.m
    k = np.arange(2 * m + 1)
    cos_sigma = np.clip(x * np.cos(angles.phi) + y * np.sin(angles.phi), -1.0, 1.0)
    ridge = chebyshev_u_all(2 * m, cos_sigma).T  # (2m+1 directions, 2m+1 degrees)
    gz = np.arccos(min(1.0, max(-1.0, float(z))))
    cz = np.cos(np.arange(2 * m + 2) * gz)
    n_tail = 2 * m - k
    num = cz[n_tail + 1] * angles.cos_gamma[:, n_tail] - cz[n_tail] * angles.cos_gamma[:, n_tail + 1]
    den = z - angles.z_nodes
    near = np.abs(den) < CD_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        tails = num / den[:, None]
    if np.any(near):
        tz = _t_orthonormal_table(gz, 2 * m)
        for l in np.nonzero(near)[0]:
            prods = tz * _t_orthonormal_table(angles.gamma[l], 2 * m)
            tails[l] = np.cumsum(prods)[n_tail]
    block = kernel_norm_constant(m) * np.einsum("nk,jk,lk->njl", ridge, angles.sin_factors, tails)
    return block, bool(np.any(near))


def lebesgue_cell(nu: int, j: int, l: int, x: float, y: float, z: float, angles: AngleSet) -> float:
    """Contribution sin(theta_j) |T[nu, j, l](x, y, z)| to the Lebesgue sum."""
    value = kernel_compact(nu, j, l, x, y, z, angles).value
    return float(np.sin(angles.theta[j - 1]) * abs(value))
