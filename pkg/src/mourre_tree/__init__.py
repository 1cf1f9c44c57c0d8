"""Operators, Haar subspaces and a Mourre-estimate lab for truncated binary trees."""
from .conjugate import (
    ConjugateOperator, build_iA_algebraic, build_iA_entrywise, row_sum_bound, row_sum_check, row_sums,
)
from .errors import ContractError, ConvergenceError, TruncationDomainError
from .haar import HaarBasis, SubspaceDecomposition, build_haar, build_N, dim_Q, n_matrix_element
from .linalg import EigenDecomposition, eigh, eigvalsh, operator_norm
from .modes import ModeChain, closed_form_spectrum, full_spectrum_census, reduce_mode
from .mourre import (
    MourreReport,
    SpectralWindow,
    commutator_identity_check,
    commutator_identity_residual,
    double_commutator_norm,
    mourre_experiment,
    projection_difference_check,
    smoothed_projection,
    tail_norm_profile,
)
from .operators import apply_pi_star_pi, build_Delta_d, build_L, build_pi, build_pi_star, build_R, commutator
from .potentials import Potential, first_difference_profile, second_difference_profile
from .tree import TreeGeometry

__version__ = "0.1.0"
