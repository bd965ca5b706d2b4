"""Projection factors, principal and Grassmann angles between subspaces.

Core objects live in the submodules; the most common entry points are
re-exported here.
"""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DependentBasisError,
    DimensionMismatchError,
    FieldMismatchError,
    GradeError,
    InputError,
    ProjFactorError,
    ZeroSubspaceError,
)
from .exterior import Blade, Multivector, blade_inner, blade_norm, blade_project, interior, wedge
from .linalg import (
    Field,
    Subspace,
    det,
    gram,
    inner,
    orthogonal_complement,
    orthonormalize,
    project,
    re_inner,
    realify,
    svd,
)
from .measure import (
    Parallelotope,
    SampledSet,
    monte_carlo_measure,
    parallelotope_measure,
    project_parallelotope,
    projected_set_measure,
)
from .projection import (
    ComplementFactor,
    FactorPath,
    FactorReport,
    PrincipalDecomposition,
    complement_factor,
    factor_blades,
    factor_general_bases,
    factor_interior,
    factor_orthonormal_det,
    grassmann_angle,
    line_factor,
    principal_decomposition,
    projection_factor,
)
from .pythagoras import (
    CoordinateFamily,
    OrthogonalPartition,
    verify_binomial_identity,
    verify_line_partition,
    verify_measure_line,
    verify_measure_subspace_q,
    verify_subspace_coordinates,
)
from .quantum import Observable, QuantumState, born_probability, bures_angle, fidelity, total_probability
from .identities import run_identity_suite, verify_appendix_identities

__all__ = [name for name in dir() if not name.startswith("_")]
