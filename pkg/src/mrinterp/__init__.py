"""Rational surrogates for parameter-dependent solution maps.

Build minimal rational interpolants from snapshots of a vector-valued map,
read resonances off the denominator roots, estimate residuals a posteriori
and refine the sample set greedily.  See the submodules:

* ``sampling``    parameter regions, node families, nodal polynomials
* ``polybasis``   hierarchical polynomial bases and rootfinding
* ``snapshots``   inner products and snapshot orthonormalization
* ``interpolant`` the surrogate itself
* ``estimators``  residual evaluation, estimation and greedy refinement
* ``testbeds``    synthetic full-order models and a POD baseline
* ``cli``         command-line driver
"""

from . import cli, estimators, interpolant, polybasis, sampling, snapshots, testbeds
from .errors import (
    AllZeroError,
    AtPoleError,
    ConfigError,
    DimensionMismatchError,
    EmptyApproxError,
    NodePointError,
    RankDeficientError,
    SingularSystemError,
    ZeroSnapshotError,
)
from .estimators import (
    AffineOperator,
    GreedyResult,
    calibrate,
    greedy_refine,
    residual_direct,
    residual_estimator_calibrated,
    residual_estimator_linear,
    residual_separable,
)
from .interpolant import (
    MRIConfig,
    RationalInterpolant,
    build,
    build_gramian_factor,
    minimal_denominator,
    pole_matching_error,
)
from .polybasis import (
    ChebyshevSegmentBasis,
    PolyCoeffs,
    ShiftedMonomialBasis,
    coeff_norm,
    eval_basis,
    eval_poly,
    poly_roots,
)
from .sampling import (
    Disk,
    SampleSet,
    Segment,
    capacity,
    custom_nodes,
    fejer_nodes,
    green_potential,
    nodal_poly_eval,
    quasi_random_nodes,
)
from .snapshots import EuclideanInner, SnapshotBasis, WeightedInner, orthonormalize, v_inner
from .testbeds import (
    MeromorphicMap,
    NormalEigenFOM,
    eval_meromorphic,
    fom_affine,
    fom_as_meromorphic,
    helmholtz_1d_fom,
    normal_fom_from_eigenvalues,
    pod_pole_baseline,
    quadratic_pencil_resonances,
    random_normal_fom,
    random_orthogonal_map,
    solve_fom,
    sort_poles_by_center,
)

__version__ = "0.1.0"

__all__ = [
    "AffineOperator", "AllZeroError", "AtPoleError", "ChebyshevSegmentBasis",
    "ConfigError", "DimensionMismatchError", "Disk", "EmptyApproxError",
    "EuclideanInner", "GreedyResult", "MRIConfig", "MeromorphicMap",
    "NodePointError", "NormalEigenFOM", "PolyCoeffs", "RankDeficientError",
    "RationalInterpolant", "SampleSet", "Segment", "ShiftedMonomialBasis",
    "SingularSystemError", "SnapshotBasis", "WeightedInner", "ZeroSnapshotError",
    "build", "build_gramian_factor", "calibrate", "capacity", "coeff_norm",
    "custom_nodes", "eval_basis", "eval_meromorphic", "eval_poly", "fejer_nodes",
    "fom_affine", "fom_as_meromorphic", "green_potential", "greedy_refine",
    "helmholtz_1d_fom", "minimal_denominator", "nodal_poly_eval",
    "normal_fom_from_eigenvalues", "orthonormalize", "pod_pole_baseline",
    "pole_matching_error", "poly_roots", "quadratic_pencil_resonances",
    "quasi_random_nodes", "random_normal_fom", "random_orthogonal_map",
    "residual_direct", "residual_estimator_calibrated", "residual_estimator_linear",
    "residual_separable", "solve_fom", "sort_poles_by_center", "v_inner",
]
