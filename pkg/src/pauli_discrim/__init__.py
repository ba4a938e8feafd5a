"""Minimum-error discrimination of two Pauli channels."""

from .channels import (
    GeneralizedPauliChannel,
    PauliChannel,
    PriorPair,
    apply,
    apply_extended,
    pauli_matrix,
    weyl_operator,
)
from .discrim import (
    BlochAngles,
    DiscriminationProblem,
    DiscriminationResult,
    assisted_pe,
    bell_povm,
    discrimination_operator,
    entanglement_needed,
    max_entangled,
    nonorthogonal_bounds,
    r_vector,
    solve,
    unassisted_pe,
    unassisted_povm,
    xi_eigenvalues,
    xi_operator,
)
from .exceptions import ConvergenceError, DimensionError, PauliDiscrimError, ValidationError
from .helstrom import TwoOutcomePovm, error_probability, min_error_probability, optimal_measurement
from .oracle import SearchConfig, oracle_assisted, oracle_state_discrimination, oracle_unassisted

__version__ = "0.1.0"
