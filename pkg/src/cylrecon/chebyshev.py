"""Chebyshev polynomials and Gauss-Chebyshev quadrature on [-1, 1].

Evaluation uses the three-term recurrence, which is numerically stable on
the closed interval and gives the correct limit values at the endpoints
(no trigonometric division is involved, so x = +-1 needs no special case).
Quadrature nodes and weights come from closed-form trigonometric formulas,
not from root finding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "DOMAIN_TOL",
    "QuadratureRule",
    "chebyshev_t",
    "chebyshev_t_all",
    "chebyshev_t_orthonormal",
    "chebyshev_u",
    "chebyshev_u_all",
    "nodes_first_kind",
    "nodes_second_kind",
    "quad_first_kind",
    "quad_second_kind",
]

# Inputs may land a few ulps outside [-1, 1] after upstream arithmetic.
DOMAIN_TOL = 1e-14


def _check_degree(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n!r}")


def _check_domain(x: np.ndarray) -> None:
    if np.any(np.abs(x) > 1.0 + DOMAIN_TOL):
        bad = np.asarray(x)[np.abs(x) > 1.0 + DOMAIN_TOL]
        raise ValueError(f"argument outside [-1, 1]: {bad.flat[0]}")


def _as_result(out: np.ndarray, scalar: bool) -> np.ndarray | float:
    return float(out) if scalar else out


def chebyshev_t(n: int, x) -> np.ndarray | float:
    """First-kind Chebyshev polynomial T_n(x) = cos(n arccos x).

    Parameters
    ----------
    n : int
        Degree, n >= 0.
    x : array_like
        Points in [-1, 1] (tolerance 1e-14). Scalars return floats.

    Returns
    -------
    ndarray or float
        T_n evaluated elementwise by the recurrence
        T_0 = 1, T_1 = x, T_k = 2 x T_{k-1} - T_{k-2}.
    """
    _check_degree(n)
    xs = np.asarray(x, dtype=float)
    _check_domain(xs)
    scalar = xs.ndim == 0
    if n == 0:
        return _as_result(np.ones_like(xs), scalar)
    prev = np.ones_like(xs)
    cur = xs.copy()
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * xs * cur - prev
    return _as_result(cur, scalar)


def chebyshev_u(n: int, x) -> np.ndarray | float:
    """Second-kind Chebyshev polynomial U_n(x).

    Satisfies U_n(cos t) = sin((n+1) t) / sin t for t in (0, pi) and takes
    the limit values U_n(+-1) = (+-1)^n (n+1) at the endpoints, which the
    recurrence U_0 = 1, U_1 = 2x reproduces exactly.
    """
    _check_degree(n)
    xs = np.asarray(x, dtype=float)
    _check_domain(xs)
    scalar = xs.ndim == 0
    if n == 0:
        return _as_result(np.ones_like(xs), scalar)
    prev = np.ones_like(xs)
    cur = 2.0 * xs
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * xs * cur - prev
    return _as_result(cur, scalar)


def chebyshev_t_orthonormal(n: int, x) -> np.ndarray | float:
    """First-kind polynomial normalized to unit norm in (1/pi) (1-x^2)^(-1/2) dx.

    The constant polynomial keeps norm one as is; every higher degree picks
    up a factor sqrt(2).
    """
    value = chebyshev_t(n, x)
    return value if n == 0 else np.sqrt(2.0) * value


def chebyshev_t_all(nmax: int, x) -> np.ndarray:
    """Table of T_0(x) .. T_nmax(x), shape (nmax + 1,) + shape(x)."""
    _check_degree(nmax)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    _check_domain(xs)
    out = np.empty((nmax + 1,) + xs.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = xs
    for k in range(2, nmax + 1):
        out[k] = 2.0 * xs * out[k - 1] - out[k - 2]
    return out


def chebyshev_u_all(nmax: int, x) -> np.ndarray:
    """Table of U_0(x) .. U_nmax(x), shape (nmax + 1,) + shape(x)."""
    _check_degree(nmax)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    _check_domain(xs)
    out = np.empty((nmax + 1,) + xs.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 2.0 * xs
    for k in range(2, nmax + 1):
        out[k] = 2.0 * xs * out[k - 1] - out[k - 2]
    return out


def nodes_first_kind(n: int) -> np.ndarray:
    """Zeros of T_n: cos((2l+1) pi / (2n)) for l = 0..n-1, strictly decreasing."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"node count must be a positive integer, got {n!r}")
    l = np.arange(n)
    return np.cos((2 * l + 1) * np.pi / (2 * n))


def nodes_second_kind(n: int) -> np.ndarray:
    """Zeros of U_n: cos(j pi / (n+1)) for j = 1..n, strictly decreasing."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"node count must be a positive integer, got {n!r}")
    j = np.arange(1, n + 1)
    return np.cos(j * np.pi / (n + 1))


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for (1/pi) integral of f(x) w(x) dx over [-1, 1].

    kind "first" uses weight w(x) = (1-x^2)^(-1/2) and equal weights 1/n;
    kind "second" uses w(x) = (1-x^2)^(1/2) with weights sin^2(j pi/(n+1))/(n+1).
    Both rules integrate polynomials up to degree 2n-1 exactly. The 1/pi
    prefactor is folded into the weights.
    """

    kind: str
    n: int
    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def first_kind(cls, n: int) -> "QuadratureRule":
        nodes = nodes_first_kind(n)
        return cls("first", n, nodes, np.full(n, 1.0 / n))

    @classmethod
    def second_kind(cls, n: int) -> "QuadratureRule":
        nodes = nodes_second_kind(n)
        j = np.arange(1, n + 1)
        weights = np.sin(j * np.pi / (n + 1)) ** 2 / (n + 1)
        return cls("second", n, nodes, weights)

    def apply(self, f: Callable) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def quad_first_kind(f: Callable, n: int) -> float:
    """Approximate (1/pi) integral f(x) (1-x^2)^(-1/2) dx with n nodes."""
    return QuadratureRule.first_kind(n).apply(f)


def quad_second_kind(f: Callable, n: int) -> float:
    """Approximate (1/pi) integral f(x) (1-x^2)^(1/2) dx with n nodes."""
    return QuadratureRule.second_kind(n).apply(f)
