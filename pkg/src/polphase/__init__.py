"""Polarization-resolved phase operator on a truncated two-sided Fock space."""

from .distribution import (
    DistributionComponents,
    ExponentConvention,
    PhaseDistribution,
    PhaseGrid,
    StateSpec,
    coherent_pdf_series,
    grid_sample,
    integrate,
    pdf_oracle,
    phase_density_matrix,
    squeezed_pdf_series,
    thermal_pdf_series,
)
from .estimator import PhaseDensityTransformer
from .operators import (
    BoundaryMode,
    annihilation_modified,
    bridge,
    creation_modified,
    helicity,
    number_modified,
    phase_operator,
    projector,
    susskind_glogower,
)
from .space import (
    KetVector,
    LinearOperator,
    TruncationWindow,
    adjoint,
    apply,
    basis_ket,
    commutator,
    compose,
    inner,
    label_of,
    make_window,
    norm,
    ordinal_of,
)
from .states import (
    Normalization,
    SqueezeParams,
    ThermalParams,
    coherent_state,
    hermite,
    phase_state,
    squeezed_state,
    thermal_amplitude_state,
    thermal_mixture,
)

__version__ = "0.1.0"
