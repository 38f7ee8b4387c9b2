"""Improved perturbation corrections for small Hermitian systems.

The engine redivides H = H0 + H1 into a diagonal part and a strictly
off-diagonal coupling, sums correction terms over coupling paths, and
compares the resulting transition probabilities against the exact
spectral answer. The hyperfine subpackage carries the worked example: a
hydrogen ground-state atom in a constant magnetic field.
"""

from .errors import (
    ConvergenceFailure,
    DegenerateDenominator,
    DimensionMismatch,
    InvalidSweepSpec,
    IoFailure,
    NonHermitianInput,
)
from .hermitian import (
    SpectralDecomposition,
    eigendecompose,
    evolve,
    matrix_element,
    require_hermitian,
)
from .hyperfine import (
    CoupledBasis,
    HyperfineConfig,
    PhysicalConstants,
    angular_rates,
    build_problem,
    coupled_basis,
    exact_eigensystem_closed_form,
    improved_energies_closed_form,
    normalization_factor,
    normalized_probabilities,
    pauli_operators,
)
from .perturb import (
    ImprovedSpectrum,
    PerturbationProblem,
    RedividedProblem,
    TransitionResult,
    first_order_amplitude,
    g2,
    g3,
    g4,
    improved_energies,
    redivide,
    transition_probability_exact,
    transition_probability_improved,
    transition_probability_traditional,
)
from .sweep import (
    SweepRow,
    SweepSpec,
    SweepTable,
    divergence_report,
    emit_csv,
    run_sweep,
    sweep_grid,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceFailure",
    "CoupledBasis",
    "DegenerateDenominator",
    "DimensionMismatch",
    "HyperfineConfig",
    "ImprovedSpectrum",
    "InvalidSweepSpec",
    "IoFailure",
    "NonHermitianInput",
    "PerturbationProblem",
    "PhysicalConstants",
    "RedividedProblem",
    "SpectralDecomposition",
    "SweepRow",
    "SweepSpec",
    "SweepTable",
    "TransitionResult",
    "angular_rates",
    "build_problem",
    "coupled_basis",
    "divergence_report",
    "eigendecompose",
    "emit_csv",
    "evolve",
    "exact_eigensystem_closed_form",
    "first_order_amplitude",
    "g2",
    "g3",
    "g4",
    "improved_energies",
    "improved_energies_closed_form",
    "matrix_element",
    "normalization_factor",
    "normalized_probabilities",
    "pauli_operators",
    "redivide",
    "require_hermitian",
    "run_sweep",
    "sweep_grid",
    "transition_probability_exact",
    "transition_probability_improved",
    "transition_probability_traditional",
    "__version__",
]
