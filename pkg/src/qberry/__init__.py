"""Geometric phases of spin-1 states via their stellar representation.

Two independent routes to the loop phase (cyclic overlap products, and
solid angles of the tracked stars plus a correlation correction), the
symmetry operators that pin zero-spin loop phases to {0, pi}, and
closed-form dynamics under constant spin fields. The qberry command
line exposes the same machinery on JSON inputs.
"""

__version__ = "0.1.0"

from .berry import (
    PhaseReport,
    StateLoop,
    StarTrajectory,
    bargmann_invariant,
    classify_and_verify,
    correlation_factor,
    discrete_geometric_phase,
    eigenfamily_topology,
    exchange_loop,
    gamma_decomposition,
    geodesic_loop,
    individual_loop,
    morph_loop,
    piecewise_geodesic_loop,
    rotation_loop,
    solid_angle,
    track_stars,
)
from .dynamics import (
    AACycle,
    PreservationReport,
    SpinFieldReal,
    aa_cycle,
    aa_phase,
    evolve_closed_form,
    evolve_numeric,
    geodesic_condition,
    geodesic_trajectory,
    quadrupolar_preservation_check,
)
from .majorana import (
    Star,
    StarSet,
    are_antipodal,
    majorana_polynomial,
    mirror_pair_check,
    star_vectors_of_states,
    stars_from_state,
    state_from_stars,
    symmetrized_two_qubit,
)
from .numerics import RootSet, eig_hermitian3, propagator, solve_quadratic
from .operators import (
    AntiUnitary,
    anti_unitary_theta,
    global_unitary,
    interpolating_unitary,
    quadrupolar_hamiltonian,
    quadrupole_ops,
    spin_operators,
    spin_operators_real_basis,
    spin_rotation,
    transform_operator,
    triplet_time_reversal,
    unitary_family_projectors,
)
from .states import (
    QuadrupolarAngles,
    QuadrupolarForm,
    angles_of_quadrupolar,
    canonical_quadrupolar,
    gauge_fix_quadrupolar,
    is_quadrupolar,
    overlap,
    quadrupolar_from_angles,
    quadrupolar_from_axis,
    spin_expectation,
)
from .verify import SUITES, CriterionResult, run_criterion, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
