"""Numerical tolerances used across the package.

All equality checks between two independently computed quantities use
CROSS_PATH_TOL (two decompositions compound their roundoff); checks of a
single computation against an exact value use the tighter SINGLE_PATH_TOL.
"""

# Gram-Schmidt residual below this fraction of the largest input norm marks
# a vector as dependent on its predecessors.
DEPENDENCE_RTOL = 1e-12

# One-sided Jacobi SVD: a column pair counts as orthogonal once the magnitude
# of their inner product drops below JACOBI_RTOL times the product of their
# norms; the sweep cap protects against pathological non-convergence.
JACOBI_RTOL = 1e-14
JACOBI_MAX_SWEEPS = 60

# Agreement between two independent formula paths (each involving its own
# orthonormalization and/or SVD).
CROSS_PATH_TOL = 1e-9

# Reconstruction / single-decomposition accuracy.
SINGLE_PATH_TOL = 1e-10

# Sums over orthogonal partitions or coordinate families against their exact
# integer targets.
SUM_TOL = 1e-10

# Fixed symbolic regression instances evaluated with a handful of flops.
REGRESSION_TOL = 1e-12

# Real inner product of realified vectors versus the real part of the
# Hermitian product.
REALIFY_TOL = 1e-12

# Singular values of orthonormal cross matrices within this window of 1 are
# indistinguishable from 1: the matrix entries already carry the roundoff of
# two orthonormalizations and a product, so cosines of a true intersection
# can land several ulps below 1. Snapping them to exactly 1 keeps complement
# factors of intersecting subspaces at exact zero instead of sqrt(eps) noise;
# the window only hides principal angles below ~4.5e-7 radians.
SIGMA_SNAP = 1e-13

# Determinants on the squared-factor scale below this floor cannot be told
# apart from 0; complement-factor formulas report 0 there.
DEGENERACY_SNAP = 1e-13

# Monte Carlo estimates are accepted within this many standard errors.
MC_SIGMAS = 3.0

DEFAULT_SAMPLE_COUNT = 100_000
MIN_SAMPLE_COUNT = 1_000
