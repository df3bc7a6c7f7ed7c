import math

import numpy as np
import pytest

from cylrecon.phantoms import PolynomialPhantom

SEED = 20260817


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def random_polynomial(rng, degree, name="poly"):
    """Random trivariate polynomial with every total degree <= degree, coeffs in [-1, 1]."""
    coeffs = {}
    for a in range(degree + 1):
        for b in range(degree + 1 - a):
            for c in range(degree + 1 - a - b):
                coeffs[(a, b, c)] = float(rng.uniform(-1.0, 1.0))
    return PolynomialPhantom(coeffs, name=name)


def random_disk_point(rng, rmax=1.0):
    r = rmax * np.sqrt(rng.uniform(0.0, 1.0))
    a = rng.uniform(0.0, 2.0 * np.pi)
    return float(r * np.cos(a)), float(r * np.sin(a))


def random_cylinder_point(rng, rmax=1.0):
    x, y = random_disk_point(rng, rmax)
    return x, y, float(rng.uniform(-1.0, 1.0))


# Independent scalar oracles for the kernel cells. These deliberately avoid
# the package's table machinery: plain float recurrences and math calls.

def u_values(kmax, x):
    vals = [1.0, 2.0 * x]
    for k in range(2, kmax + 1):
        vals.append(2.0 * x * vals[k - 1] - vals[k - 2])
    return vals[: kmax + 1]


def brute_kernel(nu, j, l, x, y, z, m):
    """Cell value by direct transcription of the double sum."""
    phi = 2.0 * math.pi * nu / (2 * m + 1)
    theta = j * math.pi / (2 * m + 1)
    gamma = (2 * l + 1) * math.pi / (4 * m)
    cs = max(-1.0, min(1.0, x * math.cos(phi) + y * math.sin(phi)))
    ridge = u_values(2 * m, cs)
    gz = math.acos(max(-1.0, min(1.0, z)))

    def t_on(r, ang):
        return 1.0 if r == 0 else math.sqrt(2.0) * math.cos(r * ang)

    total = 0.0
    for n in range(2 * m + 1):
        for k in range(n + 1):
            total += (
                (k + 1)
                * math.sin((k + 1) * theta)
                * ridge[k]
                * t_on(n - k, gz)
                * t_on(n - k, gamma)
            )
    return total / ((2 * m + 1) ** 2 * (2 * m))


def rim_kernel(nu, j, l, x, y, m):
    """Cell value at z = 1, where the height tail is a Dirichlet sine ratio."""
    phi = 2.0 * math.pi * nu / (2 * m + 1)
    theta = j * math.pi / (2 * m + 1)
    gamma = (2 * l + 1) * math.pi / (4 * m)
    cs = max(-1.0, min(1.0, x * math.cos(phi) + y * math.sin(phi)))
    ridge = u_values(2 * m, cs)
    total = 0.0
    for k in range(2 * m + 1):
        tail = math.sin((2 * m - k + 0.5) * gamma) / math.sin(gamma / 2.0)
        total += (k + 1) * math.sin((k + 1) * theta) * ridge[k] * tail
    return total / ((2 * m + 1) ** 2 * (2 * m))
