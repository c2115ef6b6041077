from .criterion import (
    QuadCoeffs,
    RegionConstants,
    admissible_area,
    bb_bound,
    critical_quotient,
    e_of_gamma,
    e_values,
    f_value,
    f_values,
    gamma_crit,
    gamma_crit_function,
    gamma_crit_mp,
    i_of_gamma,
    i_values,
    plus_root_values,
    quad_coeff_values,
    quad_coeffs,
    region_constants,
    z_of_alpha,
    z_values,
)
from .hyptrig import (
    AngleTriple,
    TriangleSolution,
    altitude_identity_residual,
    area_identity_residual,
    euclidean_limit_ratio,
    euclidean_ratio_values,
    euclidean_strength_ratio,
    side_lengths,
    solve_triangle,
    sti_holds,
    strength_values,
)

__all__ = [
    "AngleTriple",
    "TriangleSolution",
    "side_lengths",
    "strength_values",
    "euclidean_ratio_values",
    "solve_triangle",
    "sti_holds",
    "euclidean_strength_ratio",
    "euclidean_limit_ratio",
    "altitude_identity_residual",
    "area_identity_residual",
    "QuadCoeffs",
    "RegionConstants",
    "region_constants",
    "gamma_crit",
    "gamma_crit_function",
    "gamma_crit_mp",
    "bb_bound",
    "f_value",
    "f_values",
    "critical_quotient",
    "quad_coeffs",
    "quad_coeff_values",
    "z_of_alpha",
    "z_values",
    "plus_root_values",
    "i_of_gamma",
    "i_values",
    "e_of_gamma",
    "e_values",
    "admissible_area",
]
