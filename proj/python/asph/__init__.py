"""Python access to the explicit affine-sphere surfaces and their checks."""

from ._asph import (
    AsphError,
    U_modulus,
    c_zero_surface,
    case1_family,
    case1_isothermal,
    cone_contains,
    coth_case3,
    coth_case5,
    cubic_roots,
    family_base_angle,
    family_surface,
    general_surface,
    jacobi_sn,
    make_context,
    modulus_match,
    run_checks,
    tzitzeica_residual_case1,
    wp,
    wp_prime,
    zeta,
)

__all__ = [name for name in dir() if not name.startswith("_")]
