"""Resonance diagnostics for the acoustic wave equation, one eigenmode at a time."""

from .closed_form import (
    WaveModeSolution,
    duhamel_wave,
    homogeneous_wave,
    solve_damped,
    solve_heat,
    solve_schrodinger,
    solve_wave_cosine,
)
from .energy import (
    BalanceReport,
    HeatEstimates,
    balance_with_initial_values,
    damped_balance_residual,
    damped_transforms,
    energy_norm_ratio,
    heat_transform_and_estimates,
    resonance_aware_data_norm_sq,
    rotation_matrix,
    schrodinger_balance_residual,
    wave_balance_residual,
)
from .fourier import (
    DominanceReport,
    FourierBlock,
    HeatBlock,
    assemble_block,
    basis_frequencies,
    diagonal_dominance_audit,
    diagonal_identity_value,
    expand_coefficients,
    kernel_w,
    quadratic_form_eval,
)
from .modal import (
    DELTA_RES,
    ComplexSampled,
    ComplexSignal,
    Cosine,
    CosineCombo,
    DampedResonant,
    DomainError,
    ModeParams,
    NormReport,
    ResolutionError,
    Sampled,
    ShapeError,
    Signal,
    TimeGrid,
    UnsupportedCaseError,
    evaluate_forcing,
    sample_forcing,
)
from .norms import (
    AmplificationCurve,
    amplification_constant,
    amplification_curve,
    amplification_limits,
    bochner_norm_sq,
    data_norm_sq,
    infsup_ratio,
    l2l2_norm_sq,
    norm_report,
    trial_norm_sq,
)
from .oracle import integrate_first_order_ivp, integrate_second_order_ivp
from .quadrature import cumulative_integrate, integrate
from .spectral import (
    EigenBasis1D,
    SpectralField,
    build_basis,
    field_bochner_norm_sq,
    field_trial_norm_sq,
    project_source,
    solve_ibvp,
)
from .transforms import TransformPair, transforms

__version__ = "0.1.0"
