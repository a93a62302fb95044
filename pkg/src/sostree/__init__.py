"""Three-state nearest-neighbour gradient model on the binary Cayley tree.

Enumerates the translation-invariant boundary laws as a function of the
coupling theta, classifies each associated tree-indexed chain by the
census-reconstruction (spectral) condition and a disagreement-percolation
bound, locates the six critical couplings, and estimates census total
variation by seeded Monte Carlo broadcasting.
"""

from .algebra import (
    bisect,
    check_theta,
    cubic_critical_theta,
    cubic_discriminant,
    solve_cubic_y,
    solve_xi,
    theta_c_prime,
    xi_discriminant,
)
from .boundary import (
    BoundaryLaw,
    Regime,
    SolutionCatalog,
    enumerate_tisgms,
    mirror_image,
    system_residual,
)
from .channel import (
    Channel,
    SpectralSummary,
    analytic_eigenvalues,
    build_channel,
    spectral_summary,
    spectral_summary_for_law,
    stationary_distribution,
    weight_matrix,
)
from .errors import BracketingError, DomainError, NumericError, SostreeError
from .extremality import (
    ExtremalityReport,
    Verdict,
    classify_law,
    classify_measure,
    conditional_spin_probs,
    disagreement_f,
    disagreement_g,
    gamma_upper_bound,
    kappa_closed_form,
    kappa_general,
    msw_indicator,
    msw_indicator_strict,
    u1_printed_variant,
)
from .recursion import (
    FixedPointResult,
    TiLaw,
    iterate_to_fixed_point,
    recursion_F,
    ti_fixed_point_map,
)
from .simulate import (
    TvEstimate,
    decay_curve,
    estimate_census_tv,
    exact_depth1_tv,
    sample_broadcast,
    sample_census_batch,
)
from .thresholds import (
    ScanRow,
    ThresholdSet,
    find_all_thresholds,
    phase_diagram,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryLaw",
    "BracketingError",
    "Channel",
    "DomainError",
    "ExtremalityReport",
    "FixedPointResult",
    "NumericError",
    "Regime",
    "ScanRow",
    "SolutionCatalog",
    "SostreeError",
    "SpectralSummary",
    "ThresholdSet",
    "TiLaw",
    "TvEstimate",
    "Verdict",
    "analytic_eigenvalues",
    "bisect",
    "build_channel",
    "check_theta",
    "classify_law",
    "classify_measure",
    "conditional_spin_probs",
    "cubic_critical_theta",
    "cubic_discriminant",
    "decay_curve",
    "disagreement_f",
    "disagreement_g",
    "enumerate_tisgms",
    "estimate_census_tv",
    "exact_depth1_tv",
    "find_all_thresholds",
    "gamma_upper_bound",
    "iterate_to_fixed_point",
    "kappa_closed_form",
    "kappa_general",
    "mirror_image",
    "msw_indicator",
    "msw_indicator_strict",
    "phase_diagram",
    "recursion_F",
    "sample_broadcast",
    "sample_census_batch",
    "solve_cubic_y",
    "solve_xi",
    "spectral_summary",
    "spectral_summary_for_law",
    "stationary_distribution",
    "system_residual",
    "theta_c_prime",
    "ti_fixed_point_map",
    "u1_printed_variant",
    "weight_matrix",
    "xi_discriminant",
]
