"""Two-mode cat states in a dissipative nondegenerate parametric amplifier.

Closed-form quantum statistics (characteristic function, squeezing,
photon-number distributions, reduced factorial moments, Wigner function)
with an independent truncated Fock-space reference and a CLI for figure
reproduction and parameter scans.
"""

from .params import (
    AmplifierParams,
    CatSpec,
    DegenerateCat,
    MismatchPhase,
    Regime,
    System,
    mismatch_phase,
    normalization,
)
from .coeffs import (
    EvolvedCoeffs,
    NearSingularDenominator,
    coeffs_at,
    dyn_coeffs,
    evolved_amplitudes,
    noise_coeffs,
)
from .rho_terms import DensityTerm, TermClass, coherent_overlap, enumerate_terms
from .charfn import (
    CharPoint,
    MAX_MOMENT_ORDER,
    OrderTooHigh,
    char_full,
    char_point,
    char_term,
    moment,
    single_mode_char,
)
from .squeezing import (
    DomainError,
    SqueezeFactors,
    q_factor_even_even,
    q_factor_even_yurke,
    q_factor_odd_even,
    single_mode_squeezing,
    squeeze_survival_time,
    two_mode_squeeze_time_bound,
    two_mode_squeezing,
)
from .photon_stats import (
    Distribution,
    GenQuantities,
    TruncationWarning,
    factorial_moments,
    generating_quantities,
    laguerre,
    single_pnd,
    sum_pnd,
)
from .wigner import (
    GridSpec,
    PhaseGrid,
    SupportWarning,
    count_peaks,
    default_grid,
    wigner_cut,
    wigner_grid,
    wigner_point,
    wigner_term,
)
from . import oracle

__version__ = "0.1.0"

__all__ = [
    "AmplifierParams",
    "CatSpec",
    "CharPoint",
    "DegenerateCat",
    "DensityTerm",
    "Distribution",
    "DomainError",
    "EvolvedCoeffs",
    "GenQuantities",
    "GridSpec",
    "MAX_MOMENT_ORDER",
    "MismatchPhase",
    "NearSingularDenominator",
    "OrderTooHigh",
    "PhaseGrid",
    "Regime",
    "SqueezeFactors",
    "SupportWarning",
    "System",
    "TermClass",
    "TruncationWarning",
    "char_full",
    "char_point",
    "char_term",
    "coeffs_at",
    "coherent_overlap",
    "count_peaks",
    "default_grid",
    "dyn_coeffs",
    "enumerate_terms",
    "evolved_amplitudes",
    "factorial_moments",
    "generating_quantities",
    "laguerre",
    "mismatch_phase",
    "moment",
    "noise_coeffs",
    "normalization",
    "oracle",
    "q_factor_even_even",
    "q_factor_even_yurke",
    "q_factor_odd_even",
    "single_mode_char",
    "single_mode_squeezing",
    "single_pnd",
    "squeeze_survival_time",
    "sum_pnd",
    "two_mode_squeeze_time_bound",
    "two_mode_squeezing",
    "wigner_cut",
    "wigner_grid",
    "wigner_point",
    "wigner_term",
]
