import pytest

from projfactor.identities import run_identity_suite, verify_appendix_identities
from projfactor.linalg import Field, orthogonal_complement
from projfactor.projection import projection_factor
from projfactor.reporting import all_passed, worst_residuals
from projfactor.sampling import random_subspace, rng_from_seed

# identities that can only fire under specific dimension draws are exempt
# from the per-run coverage assertion (they are still checked when present)
ALWAYS_PRESENT = {
    "zero_subspace_conventions",
    "containment_gives_one",
    "factor_onto_image",
    "equal_dim_symmetry",
    "nested_target_chain",
    "smallest_principal_bound",
    "target_monotonicity",
    "source_antitonicity",
    "blade_projection_norm",
    "principal_coordinate_sum",
    "complement_duality",
    "double_complement_symmetry",
    "complement_principal_vs_determinant",
    "complement_principal_vs_exterior",
    "complement_vs_direct",
    "complement_pair_upper",
    "complement_pair_lower",
    "complement_pair_line",
    "complement_pair_contained",
    "wedge_complement_ratio",
    "complement_gram_formula",
}


def test_single_pair_runs_every_unconditional_identity():
    rng = rng_from_seed(3)
    v = random_subspace(rng, 5, 2, Field.REAL)
    w = random_subspace(rng, 5, 3, Field.REAL)
    checks = verify_appendix_identities(v, w, rng)
    names = {c.name for c in checks}
    assert ALWAYS_PRESENT <= names
    assert all_passed(checks)


def test_duality_on_random_pairs():
    rng = rng_from_seed(5)
    for _ in range(20):
        n = int(rng.integers(2, 8))
        v = random_subspace(rng, n, int(rng.integers(1, n)), Field.REAL)
        w = random_subspace(rng, n, int(rng.integers(1, n)), Field.REAL)
        lhs = projection_factor(v, orthogonal_complement(w))
        rhs = projection_factor(w, orthogonal_complement(v))
        assert lhs == pytest.approx(rhs, abs=1e-9)


def test_double_complement_on_random_pairs():
    rng = rng_from_seed(7)
    for _ in range(20):
        n = int(rng.integers(2, 8))
        v = random_subspace(rng, n, int(rng.integers(1, n)), Field.COMPLEX)
        w = random_subspace(rng, n, int(rng.integers(1, n)), Field.COMPLEX)
        lhs = projection_factor(orthogonal_complement(v), orthogonal_complement(w))
        assert lhs == pytest.approx(projection_factor(w, v), abs=1e-9)


def test_suite_runs_clean_at_modest_size():
    checks = run_identity_suite(trials=40, seed=2024, dims_up_to=6)
    assert all_passed(checks)
    worst = worst_residuals(checks)
    # every identity name must actually have been exercised
    for name in ALWAYS_PRESENT:
        assert name in worst
    conditional = {"perp_intersection_vanishes", "complex_line_square",
                   "line_ray_invariance", "intersection_reduction",
                   "principal_split_product", "orthogonal_split_product",
                   "interior_product_ratio", "target_monotonicity_equality",
                   "source_antitonicity_equality", "complement_pair_orthogonal",
                   "complement_pair_double_intersection"}
    for name in conditional:
        assert name in worst, name


def test_extras_override_is_used():
    rng = rng_from_seed(11)
    v = random_subspace(rng, 6, 3, Field.REAL)
    w = random_subspace(rng, 6, 4, Field.REAL)
    from projfactor.sampling import random_subspace_of

    extras = {"u_in_w": random_subspace_of(rng, w, 2),
              "a_part": random_subspace_of(rng, v, 1)}
    checks = verify_appendix_identities(v, w, rng, extras=extras)
    assert all_passed(checks)
