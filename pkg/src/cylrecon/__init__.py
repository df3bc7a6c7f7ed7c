"""Reconstruction on the solid cylinder from Radon projections of parallel disk slices.

The package evaluates a discrete orthogonal-polynomial expansion built from
finitely many line integrals: for a degree parameter m, projections are taken
along 2m chords per direction, 2m+1 directions per disk, on 2m parallel disks.
The resulting operator reproduces every polynomial of total degree at most
2m-1 exactly and converges uniformly for smooth functions.
"""

from .chebyshev import (
    QuadratureRule,
    chebyshev_t,
    chebyshev_t_orthonormal,
    chebyshev_u,
    nodes_first_kind,
    nodes_second_kind,
    quad_first_kind,
    quad_second_kind,
)
from .phantoms import PolynomialPhantom, SmoothPhantom, make_phantom, parse_coefficients
from .radon import (
    Chord,
    DatasetFormatError,
    ProjectionDataset,
    chord_point,
    collect_projections,
    radon_numeric,
    radon_ridge_analytic,
    read_dataset,
    write_dataset,
)
from .kernel import (
    AngleSet,
    KernelEvaluation,
    kernel_compact,
    kernel_direct,
    kernel_norm_constant,
    lebesgue_cell,
    ridge_angle,
)
from .reconstruct import (
    EvaluationGrid,
    ReconstructionResult,
    cylinder_expansion,
    disk_expansion,
    reconstruct_grid,
    reference_partial_sum,
    write_grid_csv,
)
from .analysis import (
    ConvergenceRecord,
    GrowthReport,
    LebesgueEstimate,
    convergence_experiment,
    growth_check,
    lebesgue_norm_estimate,
    lebesgue_sum,
    lower_bound_point,
    norm_estimation_grid,
)

__version__ = "0.1.0"
