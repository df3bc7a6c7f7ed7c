"""Radon projections over chords of parallel disk slices of the cylinder.

A chord of the unit disk is parametrized by the angle theta of its unit
normal and the signed distance t from the center:

    I(theta, t) = {(t cos theta - s sin theta, t sin theta + s cos theta)},
    |s| <= sqrt(1 - t^2).

The projection of f on the slice at height z is the line integral of
f(., ., z) along the chord. For the degree parameter m, data are collected
at directions phi_nu = 2 pi nu / (2m+1) (nu = 0..2m), offsets t_j = cos(j
pi/(2m+1)) (j = 1..2m), and heights z_l = cos((2l+1) pi/(4m)) (l = 0..2m-1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .chebyshev import chebyshev_u, nodes_first_kind, nodes_second_kind

__all__ = [
    "DATASET_FORMAT",
    "Chord",
    "DatasetFormatError",
    "ProjectionDataset",
    "chord_point",
    "collect_disk_projections",
    "collect_projections",
    "radon_numeric",
    "radon_ridge_analytic",
    "read_dataset",
    "write_dataset",
]

DATASET_FORMAT = "cyl-radon-v1"
GEOM_TOL = 1e-12

# Gauss-Legendre order when the integrand has no advertised polynomial degree.
SMOOTH_ORDER = 48


class DatasetFormatError(ValueError):
    """Malformed or inconsistent projection dataset file."""


@lru_cache(maxsize=64)
def _leggauss(order: int):
    return leggauss(order)


def chord_point(theta: float, t: float, s: float):
    """Point on the chord with normal angle theta, offset t, arclength s.

    s = 0 is the foot of the normal; |s| may not exceed the half-length
    sqrt(1 - t^2) (within tolerance).
    """
    if abs(t) > 1.0 + GEOM_TOL:
        raise ValueError(f"chord offset outside [-1, 1]: {t}")
    smax2 = max(1.0 - t * t, 0.0)
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr * s_arr > smax2 + GEOM_TOL):
        raise ValueError(f"arclength parameter beyond chord endpoint: s={s}, t={t}")
    x = t * np.cos(theta) - s_arr * np.sin(theta)
    y = t * np.sin(theta) + s_arr * np.cos(theta)
    if s_arr.ndim == 0:
        return float(x), float(y)
    return x, y


@dataclass(frozen=True)
class Chord:
    """Disk chord identified by normal angle and signed offset."""

    theta: float
    t: float

    def __post_init__(self):
        if abs(self.t) > 1.0 + GEOM_TOL:
            raise ValueError(f"chord offset outside [-1, 1]: {self.t}")

    @property
    def length(self) -> float:
        return 2.0 * np.sqrt(max(1.0 - self.t * self.t, 0.0))

    def point(self, s: float):
        return chord_point(self.theta, self.t, s)


def _default_order(f) -> int:
    degree = getattr(f, "degree", None)
    if isinstance(degree, (int, np.integer)):
        return max(16, int(degree) + 2)
    return SMOOTH_ORDER


def radon_numeric(f, theta: float, t: float, z: float, order: int | None = None) -> float:
    """Line integral of f(., ., z) along the chord (theta, t) by Gauss-Legendre.

    The integral is mapped to [-1, 1]: with h = sqrt(1 - t^2) the value is
    h * sum_i w_i f(chord(theta, t, h u_i), z). Exact for polynomial
    integrands of degree <= 2*order - 1. Tangent chords (|t| = 1) have zero
    length and return 0.
    """
    if abs(t) > 1.0 + GEOM_TOL:
        raise ValueError(f"chord offset outside [-1, 1]: {t}")
    if abs(z) > 1.0 + GEOM_TOL:
        raise ValueError(f"slice height outside [-1, 1]: {z}")
    if order is None:
        order = _default_order(f)
    if order < 2:
        raise ValueError(f"quadrature order must be >= 2, got {order}")
    half = 1.0 - t * t
    if half <= 0.0:
        return 0.0
    half = np.sqrt(half)
    u, w = _leggauss(order)
    s = half * u
    x = t * np.cos(theta) - s * np.sin(theta)
    y = t * np.sin(theta) + s * np.cos(theta)
    vals = f(x, y, np.full_like(x, z))
    return float(half * np.dot(w, vals))


def radon_ridge_analytic(k: int, ridge_dir: float, theta: float, t: float) -> float:
    """Closed-form projection of the ridge polynomial U_k(x cos a + y sin a).

    For the chord (theta, t) the line integral equals
    2 sqrt(1 - t^2) / (k + 1) * U_k(t) * U_k(cos(a - theta)) with a the
    ridge direction. This is the identity that makes finite Radon data
    sufficient for polynomial reconstruction.
    """
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise ValueError(f"ridge degree must be a nonnegative integer, got {k!r}")
    if abs(t) > 1.0 + GEOM_TOL:
        raise ValueError(f"chord offset outside [-1, 1]: {t}")
    tc = min(1.0, max(-1.0, t))
    lead = 2.0 * np.sqrt(max(1.0 - tc * tc, 0.0)) / (k + 1)
    return float(lead * chebyshev_u(k, tc) * chebyshev_u(k, np.cos(ridge_dir - theta)))


def projection_angles(m: int) -> np.ndarray:
    """Directions phi_nu = 2 pi nu/(2m+1), nu = 0..2m."""
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ValueError(f"degree parameter m must be a positive integer, got {m!r}")
    return 2.0 * np.pi * np.arange(2 * m + 1) / (2 * m + 1)


@dataclass
class ProjectionDataset:
    """Projection values R[nu, j-1, l] on the standard (m) sampling geometry.

    values has shape (2m+1, 2m, 2m): directions x chord offsets x slices.
    provenance records how the numbers were produced ("analytic", "numeric",
    or "file-import").
    """

    m: int
    values: np.ndarray
    provenance: str = "numeric"

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or self.m < 1:
            raise ValueError(f"degree parameter m must be a positive integer, got {self.m!r}")
        self.m = int(self.m)
        vals = np.asarray(self.values, dtype=float)
        expected = (2 * self.m + 1, 2 * self.m, 2 * self.m)
        if vals.shape != expected:
            raise ValueError(f"values shape {vals.shape} does not match m={self.m} (expected {expected})")
        if not np.all(np.isfinite(vals)):
            raise ValueError("projection values must be finite")
        self.values = vals

    @property
    def row_count(self) -> int:
        return self.values.size


def collect_projections(f, m: int, order: int | None = None) -> ProjectionDataset:
    """Numeric projections of f on the full (m) sampling geometry.

    f must be a vectorized callable f(x, y, z). One quadrature of Gauss-
    Legendre order `order` (default: degree-aware, see radon_numeric) is
    shared by all chords; the phantom is evaluated in a single broadcast
    pass over (direction, offset, quad node, slice).
    """
    phi = projection_angles(m)
    t = nodes_second_kind(2 * m)
    z = nodes_first_kind(2 * m)
    if order is None:
        order = _default_order(f)
    if order < 2:
        raise ValueError(f"quadrature order must be >= 2, got {order}")
    u, w = _leggauss(order)
    half = np.sqrt(1.0 - t * t)
    s = half[:, None] * u[None, :]
    x = t[None, :, None] * np.cos(phi)[:, None, None] - s[None] * np.sin(phi)[:, None, None]
    y = t[None, :, None] * np.sin(phi)[:, None, None] + s[None] * np.cos(phi)[:, None, None]
    vals = f(x[..., None], y[..., None], z[None, None, None, :])
    data = half[None, :, None] * np.einsum("q,njql->njl", w, vals)
    return ProjectionDataset(m, data, provenance="numeric")


def collect_disk_projections(f2d, m: int, order: int = 32) -> np.ndarray:
    """Projections R[nu, j-1] of a function on the disk (no z dependence)."""
    phi = projection_angles(m)
    t = nodes_second_kind(2 * m)
    u, w = _leggauss(order)
    half = np.sqrt(1.0 - t * t)
    s = half[:, None] * u[None, :]
    x = t[None, :, None] * np.cos(phi)[:, None, None] - s[None] * np.sin(phi)[:, None, None]
    y = t[None, :, None] * np.sin(phi)[:, None, None] + s[None] * np.cos(phi)[:, None, None]
    return half[None, :] * np.einsum("q,njq->nj", w, f2d(x, y))


def write_dataset(dataset: ProjectionDataset, path) -> None:
    """Write a dataset file: one JSON header line, then nu,j,l,value rows.

    Rows are sorted by (nu, j, l) with nu and l zero-based and j one-based.
    Values use repr-faithful %.17g so a read-back is bit-exact.
    """
    m = dataset.m
    lines = [json.dumps({"m": m, "format": DATASET_FORMAT, "provenance": dataset.provenance})]
    for nu in range(2 * m + 1):
        for j in range(1, 2 * m + 1):
            for l in range(2 * m):
                lines.append(f"{nu},{j},{l},{dataset.values[nu, j - 1, l]:.17g}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_dataset(path) -> ProjectionDataset:
    """Read a cyl-radon-v1 file, validating shape, indices and finiteness."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise DatasetFormatError("empty dataset file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"header is not valid JSON: {exc}") from None
    if not isinstance(header, dict) or header.get("format") != DATASET_FORMAT:
        raise DatasetFormatError(f"missing or unsupported format tag (expected {DATASET_FORMAT!r})")
    m = header.get("m")
    if not isinstance(m, int) or m < 1:
        raise DatasetFormatError(f"header field m must be a positive integer, got {m!r}")
    expected_rows = (2 * m + 1) * (2 * m) * (2 * m)
    rows = [line for line in lines[1:] if line.strip()]
    if len(rows) != expected_rows:
        raise DatasetFormatError(
            f"dimension mismatch: m={m} needs {expected_rows} rows, file has {len(rows)}"
        )
    values = np.full((2 * m + 1, 2 * m, 2 * m), np.nan)
    for lineno, row in enumerate(rows, start=2):
        parts = row.split(",")
        if len(parts) != 4:
            raise DatasetFormatError(f"line {lineno}: expected nu,j,l,value, got {row!r}")
        try:
            nu, j, l = int(parts[0]), int(parts[1]), int(parts[2])
            value = float(parts[3])
        except ValueError:
            raise DatasetFormatError(f"line {lineno}: malformed row {row!r}") from None
        if not (0 <= nu <= 2 * m and 1 <= j <= 2 * m and 0 <= l <= 2 * m - 1):
            raise DatasetFormatError(f"line {lineno}: index out of range in {row!r}")
        if not np.isfinite(value):
            raise DatasetFormatError(f"line {lineno}: non-finite value in {row!r}")
        if np.isfinite(values[nu, j - 1, l]):
            raise DatasetFormatError(f"line {lineno}: duplicate entry for ({nu},{j},{l})")
        values[nu, j - 1, l] = value
    if not np.all(np.isfinite(values)):
        raise DatasetFormatError("dataset is missing entries")
    provenance = header.get("provenance", "file-import")
    return ProjectionDataset(m, values, provenance=provenance)
