"""Radii of spirallikeness and starlikeness for tilted Robertson-type function classes.

The package computes the two radii (bisection on a boundary maximum, and an
exact closed form), constructs exact random members of the underlying
function classes from finite Herglotz atoms, and verifies the class
inequalities numerically with a seeded, reproducible harness.  See the
individual modules:

* :mod:`spirallike.core` -- branch-correct complex powers and the extremal maps
* :mod:`spirallike.samples` -- random exact class members and their quadrature
* :mod:`spirallike.subordination` -- boundary maxima, half-plane and winding tests
* :mod:`spirallike.radii` -- the radius computations themselves
* :mod:`spirallike.verify` -- the randomized verification harness
* :mod:`spirallike.cli` -- the ``spirallike`` command-line tool
"""

from .core import (
    Angle,
    CaratheodoryDisc,
    DomainError,
    PoleError,
    caratheodory_disc,
    f_lambda,
    p_lambda,
    p_lambda_inverse,
    principal_power,
    q_lambda,
)
from .radii import (
    RadiusReport,
    min_radius_r2,
    omega_avoidance_margin,
    radius_r1,
    radius_r2,
    radius_table,
)
from .samples import (
    AccuracyError,
    HerglotzMeasure,
    RobertsonSample,
    eval_caratheodory,
    f_prime,
    f_value,
    p_of_f,
    q_of_f,
    sample_measure,
    tilt,
)
from .subordination import (
    BoundaryCurve,
    IndeterminateRegionError,
    SubordinationVerdict,
    check_q_subordination,
    is_subordinate_to_halfplane,
    psi,
    region_membership,
)
from .verify import (
    VerificationReport,
    verify_differential_identity,
    verify_lemma1,
    verify_nunokawa_bound,
    verify_theorem1,
    verify_theorem2,
)

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "AccuracyError",
    "BoundaryCurve",
    "CaratheodoryDisc",
    "DomainError",
    "HerglotzMeasure",
    "IndeterminateRegionError",
    "PoleError",
    "RadiusReport",
    "RobertsonSample",
    "SubordinationVerdict",
    "VerificationReport",
    "caratheodory_disc",
    "check_q_subordination",
    "eval_caratheodory",
    "f_lambda",
    "f_prime",
    "f_value",
    "is_subordinate_to_halfplane",
    "min_radius_r2",
    "omega_avoidance_margin",
    "p_lambda",
    "p_lambda_inverse",
    "p_of_f",
    "principal_power",
    "psi",
    "q_lambda",
    "q_of_f",
    "radius_r1",
    "radius_r2",
    "radius_table",
    "region_membership",
    "sample_measure",
    "tilt",
    "verify_differential_identity",
    "verify_lemma1",
    "verify_nunokawa_bound",
    "verify_theorem1",
    "verify_theorem2",
]
