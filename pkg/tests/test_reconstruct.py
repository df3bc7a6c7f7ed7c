import json
import math

import numpy as np
import pytest

from conftest import random_cylinder_point, random_disk_point, random_polynomial

from cylrecon.chebyshev import chebyshev_u
from cylrecon.phantoms import PolynomialPhantom, const1, rotated
from cylrecon.radon import ProjectionDataset, collect_disk_projections, collect_projections
from cylrecon.reconstruct import (
    EvaluationGrid,
    cylinder_expansion,
    disk_expansion,
    reconstruct_grid,
    reference_partial_sum,
    write_grid_csv,
)


def ridge_phantom_x(k):
    def fn(x, y, z):
        return np.asarray(chebyshev_u(k, np.asarray(x))) + 0.0 * np.asarray(y) + 0.0 * np.asarray(z)

    fn.degree = k
    fn.name = f"ridge-U{k}"
    return fn


def test_grid_validation():
    with pytest.raises(ValueError):
        EvaluationGrid(np.array([[0.9, 0.9, 0.0]]))
    with pytest.raises(ValueError):
        EvaluationGrid(np.array([[0.0, 0.0, 1.2]]))
    with pytest.raises(ValueError):
        EvaluationGrid(np.zeros((2, 2)))
    g = EvaluationGrid.explicit([[0.0, 0.0, 0.0], [1.0, 0.0, -1.0]])
    assert len(g) == 2 and g.description == "explicit"


def test_grid_empty_allowed():
    g = EvaluationGrid.explicit(np.zeros((0, 3)))
    assert len(g) == 0


def test_tensor_polar_counts_and_containment():
    g = EvaluationGrid.tensor_polar(5, 8, 5)
    assert len(g) == 200 and g.description == "tensor-polar"
    r2 = g.points[:, 0] ** 2 + g.points[:, 1] ** 2
    assert np.all(r2 <= 1 + 1e-12) and np.all(np.abs(g.points[:, 2]) <= 1)
    single = EvaluationGrid.tensor_polar(1, 1, 1)
    np.testing.assert_allclose(single.points, [[1.0, 0.0, 0.0]])
    with pytest.raises(ValueError):
        EvaluationGrid.tensor_polar(0, 4, 4)


def test_disk_expansion_constant(rng):
    m = 2
    mat = collect_disk_projections(lambda x, y: np.ones_like(x), m)
    for _ in range(10):
        x, y = random_disk_point(rng)
        assert disk_expansion(mat, x, y) == pytest.approx(1.0, abs=1e-12)


def test_disk_expansion_preserves_low_degree(rng):
    m = 2
    poly = random_polynomial(rng, 2 * m - 1)
    f2d = lambda x, y: poly(x, y, 0.0)
    mat = collect_disk_projections(f2d, m, order=16)
    for _ in range(20):
        x, y = random_disk_point(rng)
        assert disk_expansion(mat, x, y) == pytest.approx(float(f2d(x, y)), abs=1e-10)


def test_disk_expansion_shape_validation():
    with pytest.raises(ValueError):
        disk_expansion(np.zeros((4, 4)), 0.0, 0.0)
    with pytest.raises(ValueError):
        disk_expansion(np.zeros((5, 4)), 2.0, 0.0)


def test_cylinder_expansion_constant_everywhere():
    ds = collect_projections(const1(), 1)
    pts = [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 0.6, 1.0), (-0.3, 0.4, -1.0)]
    for x, y, z in pts:
        assert cylinder_expansion(ds, x, y, z) == pytest.approx(1.0, abs=1e-12)


def test_cylinder_expansion_preserves_polynomials(rng):
    for m in (1, 2):
        poly = random_polynomial(rng, 2 * m - 1)
        ds = collect_projections(poly, m)
        for _ in range(20):
            x, y, z = random_cylinder_point(rng)
            want = float(poly(x, y, z))
            assert cylinder_expansion(ds, x, y, z) == pytest.approx(want, abs=1e-9)


def test_cylinder_expansion_linearity(rng):
    m = 2
    f = random_polynomial(rng, 2)
    g = random_polynomial(rng, 3)
    ds_f = collect_projections(f, m)
    ds_g = collect_projections(g, m)
    combo = ProjectionDataset(m, 2.5 * ds_f.values - 0.7 * ds_g.values, provenance="numeric")
    x, y, z = 0.3, -0.5, 0.8
    want = 2.5 * cylinder_expansion(ds_f, x, y, z) - 0.7 * cylinder_expansion(ds_g, x, y, z)
    assert cylinder_expansion(combo, x, y, z) == pytest.approx(want, abs=1e-12)


def test_rotational_equivariance_under_angle_shift(rng):
    # rotating the scene by one direction step shifts the nu axis
    m = 2
    poly = random_polynomial(rng, 3)
    step = 2 * np.pi / (2 * m + 1)
    ds = collect_projections(poly, m)
    shifted = ProjectionDataset(m, np.roll(ds.values, 1, axis=0), provenance="numeric")
    rotated_ds = collect_projections(rotated(poly, step), m)
    np.testing.assert_allclose(shifted.values, rotated_ds.values, atol=1e-12)
    for _ in range(5):
        x, y, z = random_cylinder_point(rng)
        xr = x * np.cos(step) - y * np.sin(step)
        yr = x * np.sin(step) + y * np.cos(step)
        assert cylinder_expansion(shifted, xr, yr, z) == pytest.approx(
            cylinder_expansion(ds, x, y, z), abs=1e-10
        )


def test_degree_sharpness_counterexample():
    # the degree-2m ridge polynomial is invisible to the sampling
    for m in (1, 2):
        f = ridge_phantom_x(2 * m)
        ds = collect_projections(f, m)
        assert np.max(np.abs(ds.values)) < 1e-12
        x, y, z = float(np.cos(np.pi / (4 * m + 2))), float(np.sin(np.pi / (4 * m + 2))), 1.0
        err = abs(cylinder_expansion(ds, x, y, z) - float(f(x, y, z)))
        assert err > 1e-4


def test_reference_partial_sum_constant():
    for m in (1, 2):
        assert reference_partial_sum(const1(), m, 0.3, 0.2, 0.5) == pytest.approx(1.0, abs=1e-10)


def test_reference_partial_sum_matches_discrete_on_polynomials(rng):
    for m in (1, 2):
        poly = random_polynomial(rng, 2 * m - 1)
        ds = collect_projections(poly, m)
        for _ in range(5):
            x, y, z = random_cylinder_point(rng)
            ref = reference_partial_sum(poly, m, x, y, z)
            disc = cylinder_expansion(ds, x, y, z)
            assert ref == pytest.approx(disc, abs=1e-8)
            assert ref == pytest.approx(float(poly(x, y, z)), abs=1e-8)


def test_reference_partial_sum_truncates_high_degrees():
    # sqrt(2) T_3(z) lies beyond the m=1 truncation; z^3 keeps only its
    # degree-1 part 3z/4
    t3 = PolynomialPhantom({(0, 0, 3): 4.0 * math.sqrt(2), (0, 0, 1): -3.0 * math.sqrt(2)})
    z3 = PolynomialPhantom({(0, 0, 3): 1.0})
    assert reference_partial_sum(t3, 1, 0.2, 0.1, 0.6) == pytest.approx(0.0, abs=1e-10)
    assert reference_partial_sum(z3, 1, 0.2, 0.1, 0.6) == pytest.approx(0.75 * 0.6, abs=1e-10)


def test_reference_partial_sum_validation():
    with pytest.raises(ValueError):
        reference_partial_sum(const1(), 1, 0.0, 0.0, 0.0, dense_order=4)
    with pytest.raises(ValueError):
        reference_partial_sum(const1(), 0, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        reference_partial_sum(const1(), 1, 0.9, 0.9, 0.0)


def test_reconstruct_grid_matches_pointwise(rng):
    poly = random_polynomial(rng, 3)
    ds = collect_projections(poly, 2)
    grid = EvaluationGrid.tensor_polar(3, 4, 3)
    res = reconstruct_grid(ds, grid)
    assert res.m == 2 and res.method == "discrete" and res.values.shape == (36,)
    for i in (0, 7, 35):
        x, y, z = grid.points[i]
        assert res.values[i] == cylinder_expansion(ds, x, y, z)


def test_reconstruct_grid_thread_count_is_bitwise_irrelevant(rng):
    poly = random_polynomial(rng, 3)
    ds = collect_projections(poly, 2)
    grid = EvaluationGrid.tensor_polar(4, 6, 5)
    a = reconstruct_grid(ds, grid, threads=1)
    b = reconstruct_grid(ds, grid, threads=8)
    assert np.array_equal(a.values, b.values)


def test_reconstruct_grid_point_order_follows_grid(rng):
    poly = random_polynomial(rng, 2)
    ds = collect_projections(poly, 1)
    base = EvaluationGrid.tensor_polar(3, 3, 3)
    perm = np.arange(len(base))[::-1]
    shuffled = EvaluationGrid.explicit(base.points[perm])
    res_a = reconstruct_grid(ds, base)
    res_b = reconstruct_grid(ds, shuffled)
    assert np.array_equal(res_a.values[perm], res_b.values)


def test_reconstruct_grid_empty():
    ds = collect_projections(const1(), 1)
    res = reconstruct_grid(ds, EvaluationGrid.explicit(np.zeros((0, 3))))
    assert res.values.shape == (0,)


def test_reconstruct_grid_threads_validation():
    ds = collect_projections(const1(), 1)
    with pytest.raises(ValueError):
        reconstruct_grid(ds, EvaluationGrid.tensor_polar(1, 1, 1), threads=0)


def test_write_grid_csv_layout(tmp_path, rng):
    poly = random_polynomial(rng, 2)
    ds = collect_projections(poly, 1)
    grid = EvaluationGrid.tensor_polar(2, 3, 2)
    res = reconstruct_grid(ds, grid)
    path = tmp_path / "grid.csv"
    write_grid_csv(res, path)
    lines = path.read_text().splitlines()
    header = json.loads(lines[0])
    assert header == {"m": 1, "method": "discrete"}
    assert len(lines) == 1 + len(grid)
    for line, (x, y, z), v in zip(lines[1:], grid.points, res.values):
        px, py, pz, pv = (float(p) for p in line.split(","))
        assert (px, py, pz) == (x, y, z)
        assert pv == v
