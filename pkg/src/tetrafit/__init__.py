"""Estimate a tetrahedron's vertices from uniform random points inside it."""

__version__ = "0.1.0"

from .errors import (
    ComplexRoots,
    DegenerateTetrahedron,
    EmptySample,
    InvalidConfig,
    InvalidCount,
    TetrafitError,
    TooFewPoints,
)
from .estimator import (
    AxisTransform,
    EstimationConfig,
    EstimationResult,
    PermutationPair,
    estimate_from_moments,
    estimate_vertices,
)
from .geometry import Barycentric4, Point3, Tetrahedron, contains_point, orientation_determinant, volume
from .harness import run_trial, standard_error, sweep
from .moments import empirical_moment_set, theoretical_moment_set
from .quartic import lambdas_from_moments, solve_quartic_real
from .sampler import SeededGenerator, sample, sample_batch, sample_point
