"""Quaternionic polynomials: zero sets, convex hull certificates for
critical points, slice factorizations, and coefficient bounds."""

from .quaternion import (
    I,
    J,
    K,
    ONE,
    ZERO,
    Quaternion,
    TwoSphere,
    imag_unit,
    is_unit_imaginary,
    orthogonal_unit,
    random_unit_imaginary,
    same_sphere,
    sphere_of,
)
from .qpoly import (
    QPoly,
    SlicePoly,
    characteristic_poly,
    left_divide_linear,
    pointwise_star_eval,
    restrict_to_slice,
    star_mul,
)
from .roots import (
    IsolatedZero,
    NumericalBreakdown,
    RootCluster,
    SphereZero,
    ZeroSet,
    classify_sphere,
    complex_roots,
    critical_points,
    zero_set,
)
from .hull import (
    HullCertificate,
    Outside,
    hull_membership_4d,
    hull_membership_slice,
)
from .factorization import (
    MFactor,
    check_l_identity,
    fejer_riesz_factor,
    slice_symmetrization,
)
from .gauss_lucas import (
    CriticalPointCheck,
    GLReport,
    modulus_lower_bound,
    modulus_lower_bound_details,
    random_factored_poly,
    random_quaternion_ball,
    random_real_poly,
    run_verification_campaign,
    slice_equivalence_check,
    verify_gauss_lucas,
    verify_real_case,
)

__version__ = "0.1.0"

__all__ = [
    "Quaternion", "TwoSphere", "I", "J", "K", "ONE", "ZERO",
    "imag_unit", "is_unit_imaginary", "orthogonal_unit",
    "random_unit_imaginary", "same_sphere", "sphere_of",
    "QPoly", "SlicePoly", "star_mul", "pointwise_star_eval",
    "left_divide_linear", "characteristic_poly", "restrict_to_slice",
    "RootCluster", "complex_roots", "NumericalBreakdown",
    "IsolatedZero", "SphereZero", "ZeroSet", "classify_sphere",
    "zero_set", "critical_points",
    "HullCertificate", "Outside", "hull_membership_slice",
    "hull_membership_4d",
    "MFactor", "fejer_riesz_factor", "check_l_identity",
    "slice_symmetrization",
    "GLReport", "CriticalPointCheck", "verify_gauss_lucas",
    "verify_real_case", "slice_equivalence_check",
    "modulus_lower_bound", "modulus_lower_bound_details",
    "random_quaternion_ball", "random_factored_poly", "random_real_poly",
    "run_verification_campaign",
]
