import itertools

import numpy as np
import pytest

from clusterport import (
    StateVector,
    basis_state,
    fidelity,
    format_state,
    inner,
    normalize,
    relabel,
    reorder,
    tensor,
)
from conftest import random_state


class TestConstruction:
    def test_first_label_is_most_significant(self):
        s = basis_state((3, 4, 5, 6), (0, 0, 1, 1))
        assert s.amps[3] == 1.0
        assert np.count_nonzero(s.amps) == 1

    def test_single_qubit_kets(self):
        np.testing.assert_array_equal(basis_state((1,), (0,)).amps, [1, 0])
        np.testing.assert_array_equal(basis_state((1,), (1,)).amps, [0, 1])

    def test_two_qubit_index_order(self):
        s = basis_state((1, 2), (1, 0))
        assert s.amps[2] == 1.0

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError):
            StateVector((1, 1), np.zeros(4))

    def test_nonpositive_labels_rejected(self):
        with pytest.raises(ValueError):
            StateVector((0, 1), np.array([1, 0, 0, 0]))

    def test_amplitude_count_must_match(self):
        with pytest.raises(ValueError):
            StateVector((1, 2), np.array([1.0, 0.0]))

    def test_register_cap(self):
        with pytest.raises(ValueError):
            StateVector(tuple(range(1, 10)), np.zeros(512))

    def test_nonfinite_amplitudes_rejected(self):
        with pytest.raises(ValueError):
            StateVector((1,), np.array([np.nan, 0.0]))

    def test_empty_register_allowed(self):
        s = StateVector((), np.array([1.0 + 0j]))
        assert s.n_qubits == 0
        assert s.norm() == 1.0

    def test_basis_state_needs_a_qubit(self):
        with pytest.raises(ValueError):
            basis_state((), ())

    def test_bits_validated(self):
        with pytest.raises(ValueError):
            basis_state((1,), (2,))

    def test_amps_are_frozen(self):
        s = basis_state((1,), (0,))
        with pytest.raises(ValueError):
            s.amps[0] = 5.0


class TestBasisOrthonormality:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_exhaustive(self, n):
        labels = tuple(range(1, n + 1))
        kets = [basis_state(labels, bits) for bits in itertools.product((0, 1), repeat=n)]
        for i, a in enumerate(kets):
            for j, b in enumerate(kets):
                expected = 1.0 if i == j else 0.0
                assert inner(a, b) == pytest.approx(expected, abs=1e-12)


class TestTensor:
    def test_basis_concatenation(self):
        s = tensor(basis_state((1,), (1,)), basis_state((2, 3), (0, 1)))
        assert s.labels == (1, 2, 3)
        assert s.amps[0b101] == 1.0

    def test_overlap_rejected(self):
        a = basis_state((1, 2), (0, 0))
        with pytest.raises(ValueError):
            tensor(a, basis_state((2,), (0,)))

    def test_norm_preserved(self, rng):
        for _ in range(25):
            a = random_state(rng, (1, 2))
            b = random_state(rng, (3,))
            assert tensor(a, b).norm() == pytest.approx(1.0, abs=1e-12)

    def test_associative(self, rng):
        a = random_state(rng, (1,))
        b = random_state(rng, (2, 3))
        c = random_state(rng, (4,))
        left = tensor(tensor(a, b), c)
        right = tensor(a, tensor(b, c))
        assert left.labels == right.labels
        np.testing.assert_allclose(left.amps, right.amps, atol=1e-12)

    def test_total_size_capped(self):
        a = StateVector(tuple(range(1, 6)), np.eye(32)[0])
        b = StateVector(tuple(range(6, 11)), np.eye(32)[0])
        with pytest.raises(ValueError):
            tensor(a, b)


class TestInner:
    def test_requires_same_order(self):
        a = basis_state((1, 2), (0, 1))
        b = basis_state((2, 1), (1, 0))
        with pytest.raises(ValueError):
            inner(a, b)

    def test_conjugate_symmetry(self, rng):
        a = random_state(rng, (1, 2))
        b = random_state(rng, (1, 2))
        assert inner(a, b) == pytest.approx(np.conj(inner(b, a)), abs=1e-12)


class TestFidelity:
    def test_self(self, rng):
        a = random_state(rng, (1, 2, 3))
        assert fidelity(a, a) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal(self):
        assert fidelity(basis_state((1,), (0,)), basis_state((1,), (1,))) == 0.0

    def test_half_overlap(self):
        plus = StateVector((1,), np.array([1, 1]) / np.sqrt(2))
        assert fidelity(basis_state((1,), (0,)), plus) == pytest.approx(0.5, abs=1e-12)

    def test_global_phase_invariant(self, rng):
        a = random_state(rng, (1, 2))
        for phase in (1j, -1, np.exp(0.37j)):
            b = StateVector(a.labels, a.amps * phase)
            assert fidelity(a, b) == pytest.approx(1.0, abs=1e-12)

    def test_reorders_internally(self):
        # |0>_1 |1>_2 listed as (2, 1) is the same physical state
        a = basis_state((1, 2), (0, 1))
        b = basis_state((2, 1), (1, 0))
        assert fidelity(a, b) == pytest.approx(1.0, abs=1e-12)

    def test_reorder_random(self, rng):
        for _ in range(20):
            a = random_state(rng, (1, 2, 3))
            perm = tuple(rng.permutation(a.labels))
            assert fidelity(a, reorder(a, perm)) == pytest.approx(1.0, abs=1e-12)

    def test_label_set_must_match(self):
        with pytest.raises(ValueError):
            fidelity(basis_state((1,), (0,)), basis_state((2,), (0,)))

    def test_symmetric(self, rng):
        a = random_state(rng, (1, 2))
        b = random_state(rng, (2, 1))
        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-12)


class TestNormalize:
    def test_scales_down(self):
        s = StateVector((1,), np.array([2.0, 0.0]))
        np.testing.assert_allclose(normalize(s).amps, [1.0, 0.0], atol=1e-15)

    def test_quarter_amplitude_branch(self):
        alpha, delta = 0.6, 0.8
        raw = StateVector((4, 5), np.array([alpha, 0, 0, -delta]) / 4.0)
        out = normalize(raw)
        np.testing.assert_allclose(out.amps, [alpha, 0, 0, -delta], atol=1e-12)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            normalize(StateVector((1,), np.zeros(2)))


class TestReorderRelabel:
    def test_reorder_moves_amplitudes(self):
        s = basis_state((1, 2), (0, 1))
        r = reorder(s, (2, 1))
        assert r.labels == (2, 1)
        assert r.amps[2] == 1.0

    def test_reorder_requires_permutation(self):
        with pytest.raises(ValueError):
            reorder(basis_state((1, 2), (0, 0)), (1, 3))

    def test_relabel_keeps_amplitudes(self, rng):
        s = random_state(rng, (1, 2))
        r = relabel(s, {1: 4, 2: 5})
        assert r.labels == (4, 5)
        np.testing.assert_array_equal(r.amps, s.amps)

    def test_relabel_collision_rejected(self):
        with pytest.raises(ValueError):
            relabel(basis_state((1, 2), (0, 0)), {1: 2})


class TestFormatState:
    def test_rotates_leading_phase(self):
        s = StateVector((1,), np.array([-1.0, 0.0]))
        assert format_state(s) == "1|0>"

    def test_two_terms(self):
        s = StateVector((1, 2), np.array([0.6, 0, 0, 0.8]))
        assert format_state(s) == "0.6|00> + 0.8|11>"

    def test_imaginary_part(self):
        s = StateVector((1,), np.array([0.6, 0.8j]))
        assert "0.8i|1>" in format_state(s)
