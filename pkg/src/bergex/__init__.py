"""Linear extremal problems over Bergman spaces of the unit disc.

The package solves, certifies, and studies the problem of maximizing
Re phi over the unit sphere of A^p for even integers p, where phi is an
integral functional with polynomial kernel. Coefficient arithmetic is
exact throughout: norms, pairings, and gradients reduce to convolutions
and cross-correlations of Taylor coefficients, routed through a compiled
extension when available and a pure-NumPy fallback otherwise.
"""

__version__ = "0.1.0"

from ._backend import backend_name
from .poly import (
    ONE,
    ZERO,
    AnalyticPoly,
    DegreeCapError,
    TrigPoly,
    antiderivative,
    as_poly,
    degree_cap,
    derivative,
    get_max_degree,
    k_transform,
    monomial,
    multiply,
    power,
    set_max_degree,
    shift,
    szego_project,
    taylor_truncate,
)
from .spaces import (
    HardyNormRequest,
    QuadratureGrid,
    bergman_inner,
    bergman_norm_even,
    bergman_norm_general,
    default_grid,
    fourier_coeff_abs_power,
    functional_value,
    hardy_inner,
    hardy_norm_even,
    hardy_norm_general,
)
from .solver import (
    ExtremalProblem,
    ExtremalSolution,
    NonConvergenceError,
    brute_force_oracle,
    extremality_residual,
    gradient_norm_p,
    kernel_from_extremal,
    solve_extremal,
    solve_truncated_family,
)
from .checks import (
    GrowthStudyRow,
    VerificationReport,
    check_coefficient_bound,
    check_fourier_formula,
    check_hinfty_criterion,
    check_norm_equality,
    check_ryabykh_bound,
    check_weighted_norm_formula,
    coefficient_bound_sweep,
    convergence_study,
    growth_study,
    norm_equality_decay_study,
)
from .analysis import (
    RadialProfile,
    antiderivative_product,
    check_hardy_mult_int,
    check_klb_truncation,
    disc_pairing,
    hl_maximal,
    lp_g_function,
    radial_profile,
)
from .kernelspec import KernelSpec, coeffs_spec, power_decay_spec, truncate_spec
from .families import standard_family

__all__ = [
    "__version__",
    "backend_name",
    "ONE",
    "ZERO",
    "AnalyticPoly",
    "DegreeCapError",
    "TrigPoly",
    "antiderivative",
    "as_poly",
    "degree_cap",
    "derivative",
    "get_max_degree",
    "k_transform",
    "monomial",
    "multiply",
    "power",
    "set_max_degree",
    "shift",
    "szego_project",
    "taylor_truncate",
    "HardyNormRequest",
    "QuadratureGrid",
    "bergman_inner",
    "bergman_norm_even",
    "bergman_norm_general",
    "default_grid",
    "fourier_coeff_abs_power",
    "functional_value",
    "hardy_inner",
    "hardy_norm_even",
    "hardy_norm_general",
    "ExtremalProblem",
    "ExtremalSolution",
    "NonConvergenceError",
    "brute_force_oracle",
    "extremality_residual",
    "gradient_norm_p",
    "kernel_from_extremal",
    "solve_extremal",
    "solve_truncated_family",
    "GrowthStudyRow",
    "VerificationReport",
    "check_coefficient_bound",
    "check_fourier_formula",
    "check_hinfty_criterion",
    "check_norm_equality",
    "check_ryabykh_bound",
    "check_weighted_norm_formula",
    "coefficient_bound_sweep",
    "convergence_study",
    "growth_study",
    "norm_equality_decay_study",
    "RadialProfile",
    "antiderivative_product",
    "check_hardy_mult_int",
    "check_klb_truncation",
    "disc_pairing",
    "hl_maximal",
    "lp_g_function",
    "radial_profile",
    "KernelSpec",
    "coeffs_spec",
    "power_decay_spec",
    "truncate_spec",
    "standard_family",
]
