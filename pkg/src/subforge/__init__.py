"""Certified principal-submatrix selection and root-hull contraction.

The package walks one chain of ideas: characteristic polynomials of
principal submatrices average to the derivative of the full characteristic
polynomial, so repeated differentiation of a real-rooted polynomial predicts
how well a greedy selector can do; a barrier potential turns that prediction
into closed-form bounds and running certificates; and the same derivative
operation on complex polynomials contracts the convex hull of the root set
by a quantifiable factor.
"""

from .config import DEFAULT, Tolerances, VERSION, worker_count
from .errors import (
    BarrierNotRightOfOne,
    BarrierNotRightOfRoots,
    BoundViolation,
    CertificateViolation,
    ConvergenceFailure,
    CRangeError,
    DegenerateHull,
    DegenerateProfile,
    DegreeTooSmall,
    DeltaRange,
    DerivativeOrderTooLarge,
    FormatError,
    InputError,
    KOutOfRange,
    NonPositivePhi,
    NotHermitian,
    NotPositiveContraction,
    OracleFailure,
    RootConvergenceFailure,
    SizeTooLarge,
    SpectrumOutOfRange,
    SubforgeError,
    ZeroOperator,
)
from .realroot import (
    PHI_INFINITY,
    RealRootedPoly,
    derivative_roots,
    max_root,
    nth_derivative_roots,
    potential,
    smax,
)
from .barrier import (
    BoundReport,
    SpectralProfile,
    barrier_bound,
    bt_bound,
    hm_bound,
    kastza_bound,
    modified_stable_rank,
    mrr_bound,
    mrr_optimal_barrier,
    optimize_barrier,
    refined_potential_bound,
    shifted_min_bound,
    xst_params,
    zd1_bound,
    zd3_bound,
)
from .submatrix import (
    HermitianMatrix,
    RectOperator,
    SelectionCertificate,
    SelectionMode,
    charpoly_as_roots,
    eigenvalues,
    select_columns,
    select_invertible,
    select_low_norm,
    select_maxroot_greedy,
    select_smax_greedy,
    select_two_sided,
    thompson_residual,
)
from .gausslucas import (
    ComplexPoly,
    HullReport,
    RootSet,
    check_chain,
    check_pereira,
    complex_roots,
    derivative,
    directional_spread,
    disc_containment,
    gl_area_ratio,
    hull,
    hull_contains,
    majorizes,
    real_part_poly,
    rr_spread_ratio,
    sharpness_experiment,
)
from .formats import (
    certificate_from_dict,
    certificate_to_dict,
    load_matrix,
    load_poly_complex,
    load_poly_real_rooted,
    write_json,
    write_roots_csv,
)

__version__ = VERSION

__all__ = [
    "BarrierNotRightOfOne",
    "BarrierNotRightOfRoots",
    "BoundReport",
    "BoundViolation",
    "CRangeError",
    "CertificateViolation",
    "ComplexPoly",
    "ConvergenceFailure",
    "DEFAULT",
    "DegenerateHull",
    "DegenerateProfile",
    "DegreeTooSmall",
    "DeltaRange",
    "DerivativeOrderTooLarge",
    "FormatError",
    "HermitianMatrix",
    "HullReport",
    "InputError",
    "KOutOfRange",
    "NonPositivePhi",
    "NotHermitian",
    "NotPositiveContraction",
    "OracleFailure",
    "PHI_INFINITY",
    "RealRootedPoly",
    "RectOperator",
    "RootConvergenceFailure",
    "RootSet",
    "SelectionCertificate",
    "SelectionMode",
    "SizeTooLarge",
    "SpectralProfile",
    "SpectrumOutOfRange",
    "SubforgeError",
    "Tolerances",
    "ZeroOperator",
    "barrier_bound",
    "bt_bound",
    "certificate_from_dict",
    "certificate_to_dict",
    "charpoly_as_roots",
    "check_chain",
    "check_pereira",
    "complex_roots",
    "derivative",
    "derivative_roots",
    "directional_spread",
    "disc_containment",
    "eigenvalues",
    "gl_area_ratio",
    "hm_bound",
    "hull",
    "hull_contains",
    "kastza_bound",
    "load_matrix",
    "load_poly_complex",
    "load_poly_real_rooted",
    "majorizes",
    "max_root",
    "modified_stable_rank",
    "mrr_bound",
    "mrr_optimal_barrier",
    "nth_derivative_roots",
    "optimize_barrier",
    "potential",
    "real_part_poly",
    "refined_potential_bound",
    "rr_spread_ratio",
    "select_columns",
    "select_invertible",
    "select_low_norm",
    "select_maxroot_greedy",
    "select_smax_greedy",
    "select_two_sided",
    "sharpness_experiment",
    "shifted_min_bound",
    "smax",
    "thompson_residual",
    "worker_count",
    "write_json",
    "write_roots_csv",
    "xst_params",
    "zd1_bound",
    "zd3_bound",
]
