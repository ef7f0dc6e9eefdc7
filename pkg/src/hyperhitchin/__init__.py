"""Spectral curves, action-angle coordinates and bracket checks for Hitchin
systems of type A, B, C on hyperelliptic curves."""

from .actions import (
    PhaseConfiguration,
    assemble_system,
    cramer_solve,
    random_hamiltonians,
    sample_config,
    solve_actions,
)
from .curve import (
    HyperellipticCurve,
    SheetPoint,
    branch_points,
    continue_y,
    evaluate_P,
    y_continuation_step,
)
from .dynamics import (
    BracketReport,
    Observable,
    poisson_bracket,
    verify_commutativity,
    verify_darboux,
)
from .errors import *  # noqa: F401,F403
from .family import (
    BasisMonomial,
    CoefficientLayout,
    HamiltonianVector,
    SpectralCurve,
    SpectralPoint,
    R_eval,
    dR_dlambda,
    dR_dx_on_curve,
    enumerate_basis,
    lambda_roots,
    r_eval,
    to_intro_hamiltonians,
)
from .geometry import (
    AngleVector,
    DifferentialIndex,
    PathPolicy,
    XPath,
    angle_coordinates,
    continue_path,
    differential_value,
    spectral_branch_points,
    to_intro_angles,
)
from .lie_data import InvariantData, LieAlgebraSpec, check_degree_identity, invariant_data

__version__ = "0.1.0"
