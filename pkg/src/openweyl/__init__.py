"""Dissipative Weyl-semimetal qubit: bands, steady states and Lindblad dynamics."""

from openweyl.model import (
    SIGMA_0,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    EffectiveField,
    ModelParams,
    MomentumPoint,
    band_gap,
    effective_field,
    energy_bands,
    hamiltonian,
    mass_parameter,
    realize_mass,
)
from openweyl.steady import (
    BlochVector,
    DensityMatrix,
    SteadyStateError,
    bloch_radius,
    bloch_vector,
    purity,
    purity_closed_form,
    steady_state,
)
from openweyl.dynamics import (
    DecayFit,
    NumericalStabilityError,
    Trajectory,
    build_liouvillian,
    coherence_series,
    component_rhs,
    fit_decay_rate,
    integrate,
    lindblad_rhs,
    steady_state_numeric,
)
from openweyl.scan import (
    Grid2D,
    SweepResult,
    band_surface,
    bloch_trajectory_of_steady_states,
    find_band_touchings,
    purity_surface,
    transition_sweep,
)

__version__ = "0.1.0"
