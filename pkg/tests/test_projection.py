import math

import numpy as np
import pytest

from projfactor.errors import (
    DependentBasisError,
    FieldMismatchError,
    GradeError,
    ZeroSubspaceError,
)
from projfactor.exterior import Blade, expand
from projfactor.linalg import (
    Field,
    Subspace,
    orthogonal_complement,
    realify_subspace,
    realify_vector,
)
from projfactor.projection import (
    FactorPath,
    applicable_paths,
    complement_factor,
    complement_factor_general_bases,
    compute_factor,
    euclidean_angle,
    factor_blades,
    factor_general_bases,
    factor_orthonormal_det,
    grassmann_angle,
    hermitian_angle,
    line_factor,
    principal_decomposition,
    projection_factor,
)
from projfactor.sampling import random_subspace, rng_from_seed


def span(*vectors):
    return Subspace.span([np.asarray(v, dtype=float) for v in vectors])


E4 = np.eye(4)


class TestPrincipalDecomposition:
    def test_identical_lines(self):
        v = span([1, 0])
        dec = principal_decomposition(v, v)
        assert dec.sigma[0] == pytest.approx(1.0)
        assert dec.theta[0] == pytest.approx(0.0)

    def test_orthogonal_lines(self):
        dec = principal_decomposition(span([1, 0]), span([0, 1]))
        assert dec.sigma[0] == pytest.approx(0.0)
        assert dec.theta[0] == pytest.approx(math.pi / 2)

    def test_45_degrees(self):
        dec = principal_decomposition(span([1, 1]), span([1, 0]))
        assert dec.sigma[0] == pytest.approx(math.sqrt(2) / 2)
        assert dec.theta[0] == pytest.approx(math.pi / 4)

    def test_zero_subspace_rejected(self):
        with pytest.raises(ZeroSubspaceError):
            principal_decomposition(Subspace.zero(2, Field.REAL), span([1, 0]))

    @pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
    def test_principal_vector_cross_products(self, field):
        rng = rng_from_seed(61)
        for _ in range(20):
            n = int(rng.integers(2, 8))
            v = random_subspace(rng, n, int(rng.integers(1, n + 1)), field)
            w = random_subspace(rng, n, int(rng.integers(1, n + 1)), field)
            dec = principal_decomposition(v, w)
            cross = dec.e_vecs.conj().T @ dec.f_vecs
            assert np.allclose(cross.conj().T, np.diag(dec.sigma), atol=1e-9)
            if v.field is Field.REAL:
                assert np.allclose(dec.pi_principal, dec.sigma)
            else:
                assert np.allclose(dec.pi_principal, dec.sigma**2)
            assert np.allclose(dec.theta, np.arccos(dec.sigma))


class TestProjectionFactorConventions:
    def test_zero_source(self):
        w = span([1, 0])
        assert projection_factor(Subspace.zero(2, Field.REAL), w) == 1.0

    def test_zero_target(self):
        assert projection_factor(span([1, 0]), Subspace.zero(2, Field.REAL)) == 0.0

    def test_zero_zero(self):
        z = Subspace.zero(2, Field.REAL)
        assert projection_factor(z, z) == 1.0

    def test_contained_gives_one(self):
        v = span([1, 1, 0])
        w = span([1, 0, 0], [0, 1, 0])
        assert projection_factor(v, w) == pytest.approx(1.0)

    def test_meeting_the_complement_gives_zero(self):
        v = span([0, 0, 1], [1, 1, 0])
        w = span([1, 0, 0], [0, 1, 0])
        assert projection_factor(v, w) == pytest.approx(0.0, abs=1e-12)

    def test_higher_source_dimension_gives_zero(self):
        v = span([1, 0, 0], [0, 1, 0])
        w = span([1, 1, 1])
        assert projection_factor(v, w) == 0.0

    def test_complex_line_onto_component(self):
        # v = c1 v1 + c2 v2 with |c1|^2 = 0.25 projects onto the line of v1
        # with factor |c1|^2
        c1 = 0.5 * np.exp(0.3j)
        c2 = math.sqrt(1 - abs(c1) ** 2) * np.exp(-1.1j)
        v1 = np.array([1.0 + 0j, 0.0])
        v2 = np.array([0.0 + 0j, 1.0])
        psi = c1 * v1 + c2 * v2
        line = Subspace.span([psi], Field.COMPLEX)
        target = Subspace.span([v1], Field.COMPLEX)
        assert projection_factor(line, target) == pytest.approx(0.25, abs=1e-12)


class TestDeterminantPaths:
    def test_identical_subspaces(self):
        v = span([1, 2, 0], [0, 1, 1])
        assert factor_orthonormal_det(v, v) == pytest.approx(1.0)

    def test_orthogonal_subspaces(self):
        v = span([1, 0, 0, 0], [0, 1, 0, 0])
        w = span([0, 0, 1, 0], [0, 0, 0, 1])
        assert factor_orthonormal_det(v, w) == pytest.approx(0.0)

    @pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
    def test_agrees_with_svd_path(self, field):
        rng = rng_from_seed(67)
        for _ in range(30):
            v = random_subspace(rng, 6, 2, field)
            w = random_subspace(rng, 6, 3, field)
            assert factor_orthonormal_det(v, w) == pytest.approx(
                projection_factor(v, w), abs=1e-10)

    def test_general_bases_reduces_on_orthonormal_input(self):
        v = span([1, 0, 0], [0, 1, 0])
        w = span([0, 1, 0], [0, 0, 1])
        assert factor_general_bases(v.ortho, w.ortho) == pytest.approx(
            factor_orthonormal_det(v, w), abs=1e-12)

    def test_general_bases_scale_invariant(self):
        rng = rng_from_seed(71)
        vb = rng.uniform(-1, 1, (5, 2))
        wb = rng.uniform(-1, 1, (5, 3))
        base = factor_general_bases(vb, wb)
        assert factor_general_bases(3.0 * vb, wb) == pytest.approx(base, abs=1e-12)
        assert factor_general_bases(vb, -2.0 * wb) == pytest.approx(base, abs=1e-12)

    @pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
    def test_general_bases_agrees_with_svd(self, field):
        rng = rng_from_seed(73)
        for _ in range(30):
            n = int(rng.integers(2, 8))
            p = int(rng.integers(1, n + 1))
            q = int(rng.integers(1, n + 1))
            v = random_subspace(rng, n, p, field)
            w = random_subspace(rng, n, q, field)
            assert factor_general_bases(v.basis, w.basis, field) == pytest.approx(
                projection_factor(v, w), abs=1e-9)

    def test_dependent_basis_rejected(self):
        with pytest.raises(DependentBasisError):
            factor_general_bases(
                np.array([[1.0, 2.0], [2.0, 4.0], [0.0, 0.0]]),
                np.eye(3)[:, :2])


class TestBladePath:
    def test_same_blade(self):
        nu = Blade(np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 2.0]]))
        assert factor_blades(nu, nu) == pytest.approx(1.0)

    def test_disjoint_canonical_blades(self):
        nu = Blade(E4[:, [0, 1]])
        om = Blade(E4[:, [2, 3]])
        assert factor_blades(nu, om) == pytest.approx(0.0)

    def test_zero_blade_rejected(self):
        nu = Blade(np.array([[1.0, 2.0], [1.0, 2.0]]))
        with pytest.raises(DependentBasisError):
            factor_blades(nu, nu)

    def test_complex_line_onto_coordinate_lines(self):
        # the blade route gives |S_12|/|S| = (a^2+b^2) / (a^2+b^2+c^2+d^2)
        a, b, c, d = 1.3, 0.2, -0.5, 0.8
        v = np.array([a + 1j * b, c + 1j * d])
        nu = Blade(v[:, None], Field.COMPLEX)
        om = Blade(np.array([[1.0 + 0j], [0.0]]), Field.COMPLEX)
        norm2 = a * a + b * b + c * c + d * d
        assert factor_blades(nu, om) == pytest.approx((a * a + b * b) / norm2, abs=1e-12)


class TestGrassmannAngle:
    def test_contained(self):
        v = span([1, 0, 0])
        w = span([1, 0, 0], [0, 1, 0])
        assert grassmann_angle(v, w) == pytest.approx(0.0)

    def test_higher_dimension_is_right_angle(self):
        v = span([1, 0, 0], [0, 1, 0])
        w = span([1, 1, 1])
        assert grassmann_angle(v, w) == pytest.approx(math.pi / 2)

    def test_lines_at_45_degrees(self):
        assert grassmann_angle(span([1, 1]), span([1, 0])) == pytest.approx(math.pi / 4)

    def test_zero_conventions(self):
        z = Subspace.zero(3, Field.REAL)
        w = span([1, 0, 0])
        assert grassmann_angle(z, w) == 0.0
        assert grassmann_angle(z, z) == 0.0
        assert grassmann_angle(w, z) == pytest.approx(math.pi / 2)

    @pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
    def test_cosine_power_gives_factor(self, field):
        rng = rng_from_seed(79)
        for _ in range(20):
            n = int(rng.integers(1, 8))
            v = random_subspace(rng, n, int(rng.integers(1, n + 1)), field)
            w = random_subspace(rng, n, int(rng.integers(1, n + 1)), field)
            c = math.cos(grassmann_angle(v, w))
            expected = c if field is Field.REAL else c * c
            assert projection_factor(v, w) == pytest.approx(expected, abs=1e-10)


class TestLineFactor:
    def test_vector_inside_subspace(self):
        w = span([1, 0, 0], [0, 1, 0])
        assert line_factor(np.array([0.3, -2.0, 0.0]), w) == pytest.approx(1.0)

    def test_diagonal_onto_axis(self):
        w = span([1, 0])
        v = np.array([1.0, 1.0]) / math.sqrt(2)
        assert line_factor(v, w) == pytest.approx(math.sqrt(2) / 2)

    def test_fidelity_formula(self):
        rng = rng_from_seed(83)
        for _ in range(20):
            psi = rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)
            phi = rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)
            w = Subspace.span([phi], Field.COMPLEX)
            direct = abs(np.vdot(psi, phi)) ** 2 / (
                np.linalg.norm(psi) ** 2 * np.linalg.norm(phi) ** 2)
            assert line_factor(psi, w, "complex_line") == pytest.approx(direct, abs=1e-12)

    def test_complex_mode_needs_complex_space(self):
        with pytest.raises(FieldMismatchError):
            line_factor(np.array([1.0, 0.0]), span([1, 0]), "complex_line")

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroSubspaceError):
            line_factor(np.zeros(2), span([1, 0]))

    def test_angle_formulas(self):
        v = np.array([1.0, 0.0])
        w = np.array([1.0, 1.0])
        assert euclidean_angle(v, w) == pytest.approx(math.pi / 4)
        psi = np.array([1.0 + 0j, 0.0])
        phi = np.array([1j, 0.0])
        assert hermitian_angle(psi, phi) == pytest.approx(0.0)
        assert euclidean_angle(psi, phi) == pytest.approx(math.pi / 2)


class TestComplementFactor:
    def test_orthogonal_subspaces(self):
        v = span([1, 0, 0, 0])
        w = span([0, 0, 1, 0], [0, 0, 0, 1])
        comp = complement_factor(v, w)
        assert comp.principal == pytest.approx(1.0)
        assert comp.determinant == pytest.approx(1.0)
        assert comp.exterior == pytest.approx(1.0)

    def test_intersecting_subspaces_vanish(self):
        v = span([1, 0, 0], [0, 1, 0])
        w = span([1, 0, 0])
        comp = complement_factor(v, w)
        assert comp.principal == 0.0
        assert comp.determinant == 0.0

    @pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
    def test_three_paths_agree(self, field):
        rng = rng_from_seed(89)
        for _ in range(30):
            n = int(rng.integers(2, 8))
            v = random_subspace(rng, n, int(rng.integers(1, n + 1)), field)
            w = random_subspace(rng, n, int(rng.integers(1, n + 1)), field)
            comp = complement_factor(v, w)
            direct = projection_factor(v, orthogonal_complement(w))
            assert comp.principal == pytest.approx(comp.determinant, abs=1e-9)
            assert comp.principal == pytest.approx(comp.exterior, abs=1e-9)
            assert comp.principal == pytest.approx(direct, abs=1e-9)
            oblique = complement_factor_general_bases(v.basis, w.basis, field)
            assert oblique == pytest.approx(direct, abs=1e-9)


class TestPathEquivalence:
    @pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
    def test_all_paths_pairwise(self, field):
        rng = rng_from_seed(97)
        for _ in range(60):
            n = int(rng.integers(1, 9))
            v = random_subspace(rng, n, int(rng.integers(1, n + 1)), field)
            w = random_subspace(rng, n, int(rng.integers(1, n + 1)), field)
            values = [compute_factor(v, w, p).value for p in applicable_paths(v, w)]
            assert max(values) - min(values) <= 1e-9

    def test_blade_path_requires_equal_dims(self):
        v = span([1, 0, 0])
        w = span([1, 0, 0], [0, 1, 0])
        with pytest.raises(GradeError):
            compute_factor(v, w, FactorPath.BLADES)


class TestExteriorPowerLine:
    @pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
    def test_factor_equals_factor_between_exterior_power_lines(self, field):
        # the factor between V and W equals the line factor between the
        # expanded unit blades in exterior-power coordinates
        rng = rng_from_seed(101)
        for _ in range(15):
            n = int(rng.integers(2, 7))
            p = int(rng.integers(1, n + 1))
            v = random_subspace(rng, n, p, field)
            w = random_subspace(rng, n, p, field)
            nu = expand(Blade(v.ortho, field))
            om = expand(Blade(w.ortho, field))
            nu_vec = np.array([nu.coefficient(i) for i in sorted(nu.coeffs | om.coeffs)])
            om_vec = np.array([om.coefficient(i) for i in sorted(nu.coeffs | om.coeffs)])
            cos = abs(np.vdot(nu_vec, om_vec)) / (
                np.linalg.norm(nu_vec) * np.linalg.norm(om_vec))
            expected = cos if field is Field.REAL else cos * cos
            assert projection_factor(v, w) == pytest.approx(expected, abs=1e-9)


class TestRealificationBridge:
    def test_complex_factor_is_square_of_real_line_factor(self):
        rng = rng_from_seed(103)
        for _ in range(15):
            n = int(rng.integers(1, 6))
            w = random_subspace(rng, n, int(rng.integers(1, n + 1)), Field.COMPLEX)
            vec = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
            line = Subspace.span([vec], Field.COMPLEX)
            pi_c = projection_factor(line, w)
            w_real = realify_subspace(w)
            pi_r = line_factor(realify_vector(vec), w_real, "real_line")
            assert pi_c == pytest.approx(pi_r**2, abs=1e-10)
