"""Exact computations for Rolewicz-type unbounded weighted backward shifts.

The operator ``A x = (w**k x_{k+1})_k`` on l_p or c_0 (``|w| > 1``) is chaotic
and every scalar is an eigenvalue.  This package builds the objects behind
those facts with exact rational arithmetic and checks the quantitative
estimates they rest on.
"""

from .exactnum import ComplexRational, abs_sq, format_scalar, parse_scalar, scalar_pow, trisum
from .hyperengine import (
    DenseTargetStream,
    HypercyclicSchedule,
    build_schedule,
    check_schedule,
    compute_k,
    enumerate_Y,
    extend_schedule,
    orbit_approach_error,
    partial_hypercyclic_vector,
)
from .periodic import PeriodicPoint, make_periodic, periodic_approximation, verify_periodicity
from .seqspace import (
    C0,
    ClosedFormSequence,
    DecayCert,
    FiniteSequence,
    Lp,
    NormValue,
    distance,
    norm_closed_form,
    norm_finite,
)
from .shiftop import (
    COMPLEX,
    REAL,
    ShiftOperator,
    apply_A,
    apply_A_closed,
    apply_A_pow,
    apply_B,
    apply_B_pow,
    in_domain,
    right_inverse_check,
    unboundedness_witness,
)
from .spectral import (
    eigen_membership,
    eigen_residual_check,
    eigenspace_dimension_check,
    eigenvector,
    spectrum_probe,
)

__version__ = "0.1.0"
