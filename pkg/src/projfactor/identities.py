"""Randomized verification of the projection-factor identity catalogue.

Each identity is evaluated on a random subspace pair plus auxiliary objects
(contained subspaces, orthogonal splittings, constructed intersections)
generated from the caller's RNG. Inequalities are asserted as inequalities;
their equality cases are checked constructively, by building instances known
to satisfy the equality condition. Every check reports a residual, so a
suite run aggregates worst residuals per identity name.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .errors import DependentBasisError
from .exterior import Blade, blade_norm, blade_project, wedge
from .linalg import (
    Field,
    Subspace,
    orthogonal_complement,
    realify_subspace,
    realify_vector,
)
from .projection import (
    complement_factor,
    complement_factor_general_bases,
    complement_within,
    factor_interior,
    grassmann_angle,
    intersection,
    line_factor,
    principal_basis,
    principal_decomposition,
    project_subspace,
    projection_factor,
)
from .reporting import Check, equality_check, inequality_check
from .sampling import random_subspace, random_subspace_of, random_vector
from .tolerances import CROSS_PATH_TOL


def _split_sizes(rng, total: int, groups: int) -> list[int]:
    cuts = sorted(rng.choice(np.arange(1, total), size=groups - 1, replace=False).tolist())
    edges = [0, *cuts, total]
    return [edges[i + 1] - edges[i] for i in range(groups)]


def verify_appendix_identities(v: Subspace, w: Subspace, rng,
                               tol: float = CROSS_PATH_TOL,
                               extras: dict | None = None) -> list[Check]:
    """Evaluate the identity catalogue on one subspace pair.

    ``extras`` may supply pre-built auxiliary subspaces under the keys
    "u_in_w" (a subspace of W) and "a_part" (a subspace of V used for the
    orthogonal splitting); anything missing is generated from ``rng``.
    """
    extras = extras or {}
    checks: list[Check] = []
    n, p, q, fld = v.ambient_dim, v.dim, w.dim, v.field
    slack = 1e-12

    pi_vw = projection_factor(v, w)
    w_perp = orthogonal_complement(w)
    v_perp = orthogonal_complement(v)
    pi_v_wperp = projection_factor(v, w_perp)

    # conventions for the zero subspace
    zero = Subspace.zero(n, fld)
    conv = max(
        abs(projection_factor(zero, w) - 1.0),
        abs(projection_factor(zero, zero) - 1.0),
        abs(projection_factor(v, zero) - 0.0),
        abs(grassmann_angle(zero, w) - 0.0),
        abs(grassmann_angle(v, zero) - math.pi / 2.0),
    )
    checks.append(Check("zero_subspace_conventions", conv, 0.0, conv, slack,
                        conv <= slack, "convention"))

    # a subspace meeting the orthogonal complement of W projects to measure 0
    if w_perp.dim >= 1:
        cols = [w_perp.ortho[:, 0]]
        if p >= 2:
            cols.append(random_vector(rng, n, fld))
        meet = Subspace.span(cols, fld)
        checks.append(equality_check("perp_intersection_vanishes",
                                     projection_factor(meet, w), 0.0, tol))

    # a subspace of W has factor exactly 1
    inside = random_subspace_of(rng, w, int(rng.integers(1, q + 1)))
    checks.append(equality_check("containment_gives_one",
                                 projection_factor(inside, w), 1.0, tol))

    # replacing W by the image P(V) leaves the factor unchanged
    image = project_subspace(v, w)
    checks.append(equality_check("factor_onto_image",
                                 projection_factor(v, image), pi_vw, tol))

    # symmetry at equal dimensions
    if p == q:
        other = w
        pi_sym = pi_vw
    else:
        other = random_subspace(rng, n, p, fld)
        pi_sym = projection_factor(v, other)
    checks.append(equality_check("equal_dim_symmetry",
                                 projection_factor(other, v), pi_sym, tol))

    # complex lines against their realifications
    if fld is Field.COMPLEX:
        vec = random_vector(rng, n, fld)
        pi_complex_line = line_factor(vec, w, "complex_line")
        w_real = realify_subspace(w)
        real_line = line_factor(realify_vector(vec), w_real, "real_line")
        checks.append(equality_check("complex_line_square",
                                     pi_complex_line, real_line**2, tol))
        scale = complex(rng.normal(), rng.normal()) or 1.0
        rescaled = line_factor(realify_vector(scale * vec), w_real, "real_line")
        checks.append(equality_check("line_ray_invariance", rescaled, real_line, tol))

    # factoring out a common intersection
    c_dim = int(rng.integers(1, min(p, q) + 1))
    shared = random_subspace(rng, n, c_dim, fld)
    v_cols = np.hstack([shared.basis] + [random_vector(rng, n, fld)[:, None]
                                         for _ in range(p - c_dim)])
    w_cols = np.hstack([shared.basis] + [random_vector(rng, n, fld)[:, None]
                                         for _ in range(q - c_dim)])
    try:
        v7, w7 = Subspace(v_cols, fld), Subspace(w_cols, fld)
        common = intersection(v7, w7)
        if common.dim == c_dim:
            v7r = complement_within(common, v7)
            w7r = complement_within(common, w7)
            checks.append(equality_check("intersection_reduction",
                                         projection_factor(v7r, w7r),
                                         projection_factor(v7, w7), tol))
    except DependentBasisError:
        pass  # a degenerate draw; the next trial covers this identity

    # factor splits over groups of principal vectors
    if p >= 2:
        basis = principal_basis(v, w)
        groups = int(rng.integers(2, p + 1))
        product = 1.0
        start = 0
        for size in _split_sizes(rng, p, groups):
            part = Subspace.from_orthonormal(basis[:, start : start + size], fld)
            product *= projection_factor(part, w)
            start += size
        checks.append(equality_check("principal_split_product", product, pi_vw, tol))

    # factor splits over an arbitrary orthogonal splitting V = A + B
    if p >= 2:
        a_part = extras.get("a_part")
        if a_part is None:
            a_part = random_subspace_of(rng, v, int(rng.integers(1, p)))
        b_part = complement_within(a_part, v)
        pa = project_subspace(a_part, w)
        pb = project_subspace(b_part, w)
        correction = projection_factor(pa, orthogonal_complement(pb))
        split = projection_factor(a_part, w) * projection_factor(b_part, w) * correction
        checks.append(equality_check("orthogonal_split_product", split, pi_vw, tol))

    # chaining through a nested target U inside W
    u_in_w = extras.get("u_in_w")
    if u_in_w is None:
        u_in_w = random_subspace_of(rng, w, int(rng.integers(1, q + 1)))
    chained = pi_vw * projection_factor(project_subspace(v, w), u_in_w)
    checks.append(equality_check("nested_target_chain",
                                 projection_factor(v, u_in_w), chained, tol))

    # the factor never exceeds the smallest principal factor
    dec = principal_decomposition(v, w)
    checks.append(inequality_check("smallest_principal_bound", pi_vw,
                                   float(np.min(dec.pi_principal)), slack))

    # shrinking the target cannot increase the factor; equality when the
    # image is still contained
    w_small = random_subspace_of(rng, w, int(rng.integers(1, q + 1)))
    checks.append(inequality_check("target_monotonicity",
                                   projection_factor(v, w_small), pi_vw, slack))
    if image.dim < q and image.dim > 0:
        room = complement_within(image, w)
        extra = random_subspace_of(rng, room, 1) if room.dim >= 1 else None
        cols = image.basis if extra is None else np.hstack([image.basis, extra.basis])
        w_equal = Subspace(cols, fld)
    else:
        w_equal = image
    if w_equal.dim > 0:
        checks.append(equality_check("target_monotonicity_equality",
                                     projection_factor(v, w_equal), pi_vw, tol))

    # growing the source cannot increase the factor; equality when the added
    # directions lie inside W
    v_small = random_subspace_of(rng, v, int(rng.integers(1, p + 1)))
    checks.append(inequality_check("source_antitonicity", pi_vw,
                                   projection_factor(v_small, w), slack))
    room = complement_within(project_subspace(v_small, w), w)
    if room.dim >= 1 and v_small.dim < n:
        added = random_subspace_of(rng, room, 1)
        grown = Subspace(np.hstack([v_small.basis, added.basis]), fld)
        checks.append(equality_check("source_antitonicity_equality",
                                     projection_factor(grown, w),
                                     projection_factor(v_small, w), tol))

    # projecting a blade scales its norm by the factor; compared on the
    # squared (Gram determinant) scale, which near 0 is the computable one
    nu = Blade(v.basis, fld)
    nu_norm = blade_norm(nu)
    projected = blade_norm(blade_project(nu, w))
    target = pi_vw**2 if fld is Field.REAL else pi_vw
    checks.append(equality_check("blade_projection_norm",
                                 (projected / nu_norm) ** 2, target, tol))

    # interior-product route
    if p <= q:
        checks.append(equality_check("interior_product_ratio",
                                     factor_interior(nu, Blade(w.basis, fld)), pi_vw, tol))

    # decomposition over coordinate subspaces of a principal basis
    r = int(rng.integers(1, min(p, 2) + 1))
    u_sub = random_subspace_of(rng, v, r)
    basis = principal_basis(v, w)
    pi_uw = projection_factor(u_sub, w)
    total = 0.0
    for idx in combinations(range(p), r):
        member = Subspace.from_orthonormal(basis[:, list(idx)], fld)
        a = projection_factor(u_sub, member)
        b = projection_factor(member, w)
        total += (a * b) ** 2 if fld is Field.REAL else a * b
    if fld is Field.REAL:
        checks.append(equality_check("principal_coordinate_sum",
                                     math.sqrt(max(total, 0.0)), pi_uw, tol))
    else:
        checks.append(equality_check("principal_coordinate_sum", total, pi_uw, tol))

    # duality and double complements
    checks.append(equality_check("complement_duality", pi_v_wperp,
                                 projection_factor(w, v_perp), tol))
    checks.append(equality_check("double_complement_symmetry",
                                 projection_factor(v_perp, w_perp),
                                 projection_factor(w, v), tol))

    # three routes to the complement factor agree
    comp = complement_factor(v, w)
    checks.append(equality_check("complement_principal_vs_determinant",
                                 comp.principal, comp.determinant, tol))
    checks.append(equality_check("complement_principal_vs_exterior",
                                 comp.principal, comp.exterior, tol))
    checks.append(equality_check("complement_vs_direct", comp.principal,
                                 pi_v_wperp, tol))

    # pairing a factor with its complement factor
    power = 2 if fld is Field.REAL else 1
    zeta = pi_vw**power + pi_v_wperp**power
    checks.append(inequality_check("complement_pair_upper", zeta, 1.0, tol))
    checks.append(inequality_check("complement_pair_lower", zeta, 0.0, tol, upper=False))
    line = random_subspace(rng, n, 1, fld)
    pi_l = projection_factor(line, w)
    pi_l_perp = projection_factor(line, w_perp)
    checks.append(equality_check("complement_pair_line",
                                 pi_l**power + pi_l_perp**power, 1.0, tol))
    zeta_in = projection_factor(inside, w)**power + projection_factor(inside, w_perp)**power
    checks.append(equality_check("complement_pair_contained", zeta_in, 1.0, tol))
    if w_perp.dim >= 1:
        against = random_subspace_of(rng, w_perp, int(rng.integers(1, w_perp.dim + 1)))
        zeta_perp = (projection_factor(against, w)**power
                     + projection_factor(against, w_perp)**power)
        checks.append(equality_check("complement_pair_orthogonal", zeta_perp, 1.0, tol))
        if q >= 1 and n >= 2:
            both = Subspace.span([w.ortho[:, 0], w_perp.ortho[:, 0]], fld)
            zeta_both = (projection_factor(both, w)**power
                         + projection_factor(both, w_perp)**power)
            checks.append(equality_check("complement_pair_double_intersection",
                                         zeta_both, 0.0, tol))

    # exterior-product route to the complement factor, on the squared scale
    if p + q <= n:
        omega = Blade(w.basis, fld)
        ratio2 = (blade_norm(wedge(nu, omega)) / (nu_norm * blade_norm(omega))) ** 2
    else:
        ratio2 = 0.0
    target = pi_v_wperp**2 if fld is Field.REAL else pi_v_wperp
    checks.append(equality_check("wedge_complement_ratio", ratio2, target, tol))

    # Gram-matrix route to the complement factor, on the raw oblique bases
    checks.append(equality_check("complement_gram_formula",
                                 complement_factor_general_bases(v.basis, w.basis, fld),
                                 pi_v_wperp, tol))

    return checks


def run_identity_suite(trials: int, seed: int, fields=(Field.REAL, Field.COMPLEX),
                       dims_up_to: int = 8, tol: float = CROSS_PATH_TOL) -> list[Check]:
    """Run the catalogue on ``trials`` random pairs per field."""
    checks: list[Check] = []
    for fld in fields:
        rng = np.random.default_rng(seed if fld is Field.REAL else seed + 1)
        for _ in range(trials):
            n = int(rng.integers(2, dims_up_to + 1))
            p = int(rng.integers(1, n + 1))
            q = int(rng.integers(1, n + 1))
            v = random_subspace(rng, n, p, fld)
            w = random_subspace(rng, n, q, fld)
            for check in verify_appendix_identities(v, w, rng, tol):
                check.details.setdefault("field", fld.value)
                checks.append(check)
    return checks
