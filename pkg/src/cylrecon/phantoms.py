"""Test functions on the solid cylinder x^2 + y^2 <= 1, -1 <= z <= 1.

Two families: polynomials given by explicit coefficient tables, and smooth
closed-form functions from a small named catalog. Both evaluate vectorized
over numpy arrays of coordinates.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "CATALOG",
    "PolynomialPhantom",
    "SmoothPhantom",
    "const1",
    "cosine_exp",
    "gaussian_bump",
    "make_phantom",
    "parse_coefficients",
    "rotated",
]


class PolynomialPhantom:
    """Trivariate polynomial sum of coeff * x^a y^b z^c.

    coeffs maps exponent triples (a, b, c) of nonnegative ints to floats.
    degree is the largest a+b+c with a nonzero coefficient (0 if empty).
    """

    kind = "polynomial"

    def __init__(self, coeffs: dict, name: str = "poly"):
        clean = {}
        for key, value in coeffs.items():
            a, b, c = key
            if a < 0 or b < 0 or c < 0 or any(int(e) != e for e in key):
                raise ValueError(f"exponents must be nonnegative integers, got {key!r}")
            clean[(int(a), int(b), int(c))] = float(value)
        self.coeffs = clean
        self.name = name

    @property
    def degree(self) -> int:
        live = [a + b + c for (a, b, c), v in self.coeffs.items() if v != 0.0]
        return max(live) if live else 0

    def __call__(self, x, y, z):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        z = np.asarray(z, dtype=float)
        out = np.zeros(np.broadcast(x, y, z).shape)
        for (a, b, c), coeff in self.coeffs.items():
            out = out + coeff * x**a * y**b * z**c
        return out

    def __repr__(self):
        return f"PolynomialPhantom({self.name!r}, degree={self.degree})"


class SmoothPhantom:
    """Closed-form non-polynomial phantom; degree is None."""

    kind = "smooth"
    degree = None

    def __init__(self, name: str, fn, params: tuple = ()):
        self.name = name
        self.params = tuple(params)
        self._fn = fn

    def __call__(self, x, y, z):
        return self._fn(
            np.asarray(x, dtype=float),
            np.asarray(y, dtype=float),
            np.asarray(z, dtype=float),
        )

    def __repr__(self):
        return f"SmoothPhantom({self.name!r}, params={self.params})"


def const1() -> PolynomialPhantom:
    """The constant function 1."""
    return PolynomialPhantom({(0, 0, 0): 1.0}, name="const1")


def cosine_exp(a: float = 2.0, b: float = 1.0, c: float = 1.0) -> SmoothPhantom:
    """cos(a x + b y) * exp(c z), entire in every variable."""

    def fn(x, y, z):
        return np.cos(a * x + b * y) * np.exp(c * z)

    return SmoothPhantom("cosine-exp", fn, (a, b, c))


def gaussian_bump(
    center: tuple = (0.0, 0.0, 0.0), radius: float = 0.9, amplitude: float = 1.0
) -> SmoothPhantom:
    """Compactly supported smooth bump amplitude * exp(1 - 1/(1 - rho^2)).

    rho is distance from center scaled by radius; the function vanishes with
    all derivatives on rho >= 1, so it is smooth on the whole cylinder.
    """
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    cx, cy, cz = (float(v) for v in center)

    def fn(x, y, z):
        rho2 = ((x - cx) ** 2 + (y - cy) ** 2 + (z - cz) ** 2) / radius**2
        out = np.zeros(np.broadcast(x, y, z).shape)
        inside = rho2 < 1.0
        r2 = np.where(inside, rho2, 0.0)
        out = np.where(inside, amplitude * np.exp(1.0 - 1.0 / (1.0 - r2)), 0.0)
        return out

    return SmoothPhantom("gaussian-bump", fn, (cx, cy, cz, radius, amplitude))


def rotated(phantom, alpha: float):
    """Phantom rotated by alpha about the z axis: g(p) = f(R_{-alpha} p)."""
    ca, sa = np.cos(alpha), np.sin(alpha)

    def fn(x, y, z):
        return phantom(ca * x + sa * y, -sa * x + ca * y, z)

    name = getattr(phantom, "name", "f")
    out = SmoothPhantom(f"rot({name})", fn, (alpha,))
    # rotation about z preserves total degree
    out.degree = getattr(phantom, "degree", None)
    return out


def parse_coefficients(text: str) -> dict:
    """Parse coefficient rows "a,b,c,coeff" (one per line, blanks skipped)."""
    coeffs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected a,b,c,coeff, got {raw!r}")
        try:
            a, b, c = (int(p) for p in parts[:3])
            coeff = float(parts[3])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if a < 0 or b < 0 or c < 0:
            raise ValueError(f"line {lineno}: negative exponent in {raw!r}")
        if (a, b, c) in coeffs:
            raise ValueError(f"line {lineno}: duplicate exponent triple {(a, b, c)}")
        coeffs[(a, b, c)] = coeff
    if not coeffs:
        raise ValueError("no coefficient rows found")
    return coeffs


CATALOG = {
    "const1": "constant function 1 (polynomial, degree 0)",
    "poly": "polynomial from a coefficient file (rows a,b,c,coeff)",
    "cosine-exp": "cos(2x + y) * exp(z), smooth and analytic",
    "gaussian-bump": "compactly supported smooth bump centered at the origin",
}


def make_phantom(name: str, coeffs_path=None):
    """Build a catalog phantom by id; "poly" requires a coefficient file path."""
    if name == "const1":
        return const1()
    if name == "cosine-exp":
        return cosine_exp()
    if name == "gaussian-bump":
        return gaussian_bump()
    if name == "poly":
        if coeffs_path is None:
            raise ValueError("phantom 'poly' requires a coefficient file")
        with open(coeffs_path, encoding="utf-8") as fh:
            text = fh.read()
        return PolynomialPhantom(parse_coefficients(text))
    raise KeyError(f"unknown phantom id {name!r}; known: {', '.join(sorted(CATALOG))}")
