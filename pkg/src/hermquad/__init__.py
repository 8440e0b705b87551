"""Two-point Hermite quadrature with an n-th derivative error representation."""

from hermquad.exact import Polynomial, binomial, factorial
from hermquad.hermite import (
    EndpointData,
    WeightSet,
    apply_rule,
    hermite_interpolant,
    hermite_weights,
)
from hermquad.params import (
    AlphaSet,
    Theta,
    alpha_coefficients,
    build_kernel,
    check_orthogonality,
    check_symmetry,
    closed_form_delta,
    solve_theta,
    verify_ribp_identity,
)

__all__ = [
    "AlphaSet",
    "EndpointData",
    "Polynomial",
    "Theta",
    "WeightSet",
    "alpha_coefficients",
    "apply_rule",
    "binomial",
    "build_kernel",
    "check_orthogonality",
    "check_symmetry",
    "closed_form_delta",
    "factorial",
    "hermite_interpolant",
    "hermite_weights",
    "solve_theta",
    "verify_ribp_identity",
]

__version__ = "0.1.0"
