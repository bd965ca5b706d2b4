import math

import numpy as np
import pytest

from projfactor.errors import FieldMismatchError, ZeroSubspaceError
from projfactor.linalg import Field, Subspace
from projfactor.pythagoras import OrthogonalPartition
from projfactor.quantum import (
    Observable,
    QuantumState,
    born_probability,
    bures_angle,
    fidelity,
    probabilities,
    total_probability,
)
from projfactor.sampling import random_orthogonal_partition, rng_from_seed


def observable_from_parts(*parts):
    return Observable(OrthogonalPartition(list(parts)),
                      tuple(float(i) for i in range(len(parts))))


def canonical_observable(n, dims):
    eye = np.eye(n, dtype=complex)
    parts, start = [], 0
    for d in dims:
        parts.append(Subspace.span([eye[:, j] for j in range(start, start + d)],
                                   Field.COMPLEX))
        start += d
    return observable_from_parts(*parts)


class TestBornProbability:
    def test_eigenvector_is_certain(self):
        obs = canonical_observable(3, [1, 2])
        psi = QuantumState(np.array([1.0 + 0j, 0.0, 0.0]))
        assert born_probability(psi, obs, 0) == pytest.approx(1.0)
        assert born_probability(psi, obs, 1) == pytest.approx(0.0)

    def test_balanced_superposition(self):
        obs = canonical_observable(2, [1, 1])
        psi = QuantumState(np.array([1.0, 1.0], dtype=complex) / math.sqrt(2))
        assert probabilities(psi, obs) == pytest.approx([0.5, 0.5])

    def test_amplitudes_squared(self):
        c1 = 0.3 + 0.4j
        c2 = math.sqrt(1 - abs(c1) ** 2) * np.exp(1j * 0.7)
        obs = canonical_observable(2, [1, 1])
        psi = QuantumState(np.array([c1, c2]))
        probs = probabilities(psi, obs)
        assert probs[0] == pytest.approx(abs(c1) ** 2, abs=1e-12)
        assert probs[1] == pytest.approx(abs(c2) ** 2, abs=1e-12)

    def test_bad_index(self):
        obs = canonical_observable(2, [1, 1])
        psi = QuantumState(np.array([1.0 + 0j, 0.0]))
        with pytest.raises(IndexError):
            born_probability(psi, obs, 2)


class TestTotalProbability:
    def test_eigenvector(self):
        obs = canonical_observable(3, [2, 1])
        psi = QuantumState(np.array([0.0, 1.0 + 0j, 0.0]))
        assert total_probability(psi, obs) == pytest.approx(1.0)

    def test_random_state_random_partition(self):
        rng = rng_from_seed(7)
        for _ in range(30):
            parts = random_orthogonal_partition(rng, 4, Field.COMPLEX, parts=3)
            obs = observable_from_parts(*parts)
            psi = QuantumState(rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4))
            assert abs(total_probability(psi, obs) - 1.0) <= 1e-10

    def test_normalization_is_irrelevant(self):
        obs = canonical_observable(3, [1, 2])
        psi = np.array([0.2 - 1j, 0.5, 0.3j])
        base = probabilities(QuantumState(psi), obs)
        scaled = probabilities(QuantumState(7.0 * psi), obs)
        assert scaled == pytest.approx(base, abs=1e-14)

    def test_ray_invariance_under_complex_rescaling(self):
        rng = rng_from_seed(11)
        obs = canonical_observable(4, [2, 1, 1])
        psi = rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)
        base = probabilities(QuantumState(psi), obs)
        for _ in range(20):
            c = complex(rng.normal(), rng.normal())
            if abs(c) < 1e-9:
                continue
            rescaled = probabilities(QuantumState(c * psi), obs)
            assert max(abs(a - b) for a, b in zip(base, rescaled)) <= 1e-12


class TestFidelity:
    def test_same_state(self):
        psi = np.array([0.3 + 1j, -2.0, 0.5j])
        assert fidelity(psi, psi) == pytest.approx(1.0)
        assert bures_angle(psi, psi) == pytest.approx(0.0)

    def test_orthogonal_states(self):
        psi = np.array([1.0 + 0j, 0.0])
        phi = np.array([0.0 + 0j, 1.0])
        assert fidelity(psi, phi) == pytest.approx(0.0)
        assert bures_angle(psi, phi) == pytest.approx(math.pi / 2)

    def test_half_overlap(self):
        psi = np.array([1.0 + 0j, 0.0])
        phi = np.array([1.0 + 0j, 1.0]) / math.sqrt(2)
        assert fidelity(psi, phi) == pytest.approx(0.5)

    def test_symmetry(self):
        rng = rng_from_seed(13)
        for _ in range(20):
            psi = rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3)
            phi = rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3)
            assert fidelity(psi, phi) == pytest.approx(fidelity(phi, psi), abs=1e-14)

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroSubspaceError):
            fidelity(np.zeros(2, dtype=complex), np.array([1.0 + 0j, 0.0]))


class TestObservableValidation:
    def test_real_eigenspaces_rejected(self):
        parts = OrthogonalPartition([Subspace.span([np.array([1.0, 0.0])]),
                                     Subspace.span([np.array([0.0, 1.0])])])
        with pytest.raises(FieldMismatchError):
            Observable(parts, (0.0, 1.0))

    def test_distinct_eigenvalues_required(self):
        with pytest.raises(ValueError):
            canonical_parts = OrthogonalPartition([
                Subspace.span([np.array([1.0 + 0j, 0.0])], Field.COMPLEX),
                Subspace.span([np.array([0.0 + 0j, 1.0])], Field.COMPLEX)])
            Observable(canonical_parts, (1.0, 1.0))
