"""Luenberger observer design for quaternion-valued linear SISO systems."""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DegreeError,
    DivergenceError,
    HObserveError,
    NoncentralTargetError,
    NotARootError,
    NotObservableError,
    SingularMatrixError,
    UnsupportedRootsError,
)
from .hmatrix import QMatrix, RightSpectrum, complex_adjoint, inverse, rank, right_spectrum, solve
from .observer import ObserverDesign, place, target_from_poles, verify_design
from .qpoly import QPoly, companion_matrix, eval_left, eval_right, left_substitute_matrix, poly_from_right_roots
from .quat import Quat, SimilarityClass, are_similar, similarity_class
from .realization import (
    StateSpace,
    controllability_matrix,
    is_controllable,
    is_observable,
    observability_matrix,
    spectrum_via_companion,
    to_observable_companion,
)
from .simulate import SimConfig, SimTrace, simulate_error, simulate_observer
