"""Generalized Dirichlet eta family toolkit."""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DomainError,
    EtaRiccatiError,
    InfeasibleTargetError,
    NoCrossingError,
    PrecisionError,
    SingularDenominatorError,
    UnsupportedOrderError,
)
from .fastderiv import coeff, coeff_bound, coeff_table, eta_deriv_fast, forward_difference, truncation_bound
from .mc import McConfig, McEstimate, mc_eta, mc_eta_deriv, sample_gamma, sample_Sk
from .riccati import (
    asymptotic_ratio_limit,
    curvature,
    curvature_series,
    higher_quotient,
    perturbation_factor,
    riccati_fields,
    riccati_residual,
    trapping_threshold,
)
from .series import EtaPoint, SeriesAccuracy, SeriesResult, basic_discrete, eta_deriv_direct, eta_direct, logistic
from .sonify import MelodyConfig, MidiDocument, NoteEvent, compose, melody_from_riccati, parse_midi, write_midi

__all__ = [
    "ConvergenceError",
    "DomainError",
    "EtaPoint",
    "EtaRiccatiError",
    "InfeasibleTargetError",
    "McConfig",
    "McEstimate",
    "MelodyConfig",
    "MidiDocument",
    "NoCrossingError",
    "NoteEvent",
    "PrecisionError",
    "SeriesAccuracy",
    "SeriesResult",
    "SingularDenominatorError",
    "UnsupportedOrderError",
    "asymptotic_ratio_limit",
    "basic_discrete",
    "coeff",
    "coeff_bound",
    "coeff_table",
    "compose",
    "curvature",
    "curvature_series",
    "eta_deriv_direct",
    "eta_deriv_fast",
    "eta_direct",
    "forward_difference",
    "higher_quotient",
    "logistic",
    "mc_eta",
    "mc_eta_deriv",
    "melody_from_riccati",
    "parse_midi",
    "perturbation_factor",
    "riccati_fields",
    "riccati_residual",
    "sample_Sk",
    "sample_gamma",
    "trapping_threshold",
    "truncation_bound",
    "write_midi",
]
