import numpy as np
import pytest

from qdepth.ir import (
    Circuit, CircuitError, Discipline, Gate, GateKind, Layer, LayeringError,
    Role, circuit_from_json, circuit_to_json, cnot, compose, controlled_u,
    hadamard, inverse, lower_negations, modq_gate,
    remap_qubits, single_qubit, symmetric_phase, toffoli, validate_layer,
)
from qdepth.sim import basis_state, run, unitary_of

from common import random_circuit, random_gate

STRICT, WF = Discipline.STRICT, Discipline.WITH_FANOUT


def layer(*gates):
    return Layer(tuple(gates))


class TestGateInvariants:
    def test_controls_targets_disjoint(self):
        with pytest.raises(CircuitError):
            cnot(1, 1)

    def test_negated_subset_of_controls(self):
        with pytest.raises(CircuitError):
            toffoli((0, 1), 2, negated=(3,))

    def test_modq_needs_q_at_least_two(self):
        with pytest.raises(CircuitError):
            modq_gate(1, (0, 1), 2)

    def test_modq_single_target(self):
        g = modq_gate(3, (0, 1), 2)
        assert g.q == 3 and g.targets == (2,)

    def test_fanout_single_control(self):
        with pytest.raises(CircuitError):
            Gate(GateKind.FANOUT, controls=(0, 1), targets=(2,))

    def test_explicit_matrix_must_be_unitary(self):
        with pytest.raises(CircuitError):
            single_qubit(np.array([[1, 0], [0, 2.0]]), 0)

    def test_block_size_cap(self):
        with pytest.raises(CircuitError):
            controlled_u((0,), np.eye(32), (1, 2, 3, 4, 5))

    def test_negative_index_rejected(self):
        with pytest.raises(CircuitError):
            hadamard(-1)


class TestLayerValidation:
    def test_disjoint_cnots_accepted_under_strict(self):
        validate_layer(layer(cnot(0, 1), cnot(2, 3)), STRICT, 4)

    def test_shared_control_strict_rejects_wf_accepts(self):
        shared = layer(cnot(0, 1), cnot(0, 2))
        with pytest.raises(LayeringError):
            validate_layer(shared, STRICT, 3)
        validate_layer(shared, WF, 3)

    def test_shared_target_rejected_under_wf(self):
        with pytest.raises(LayeringError):
            validate_layer(layer(cnot(0, 1), cnot(2, 1)), WF, 3)

    def test_target_feeding_control_rejected_under_wf(self):
        # these two do not commute, so they cannot share a layer
        with pytest.raises(LayeringError):
            validate_layer(layer(cnot(0, 1), cnot(1, 2)), WF, 3)

    def test_out_of_range_index(self):
        with pytest.raises(CircuitError):
            validate_layer(layer(cnot(0, 5)), STRICT, 3)

    def test_strict_acceptance_implies_wf_acceptance(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            width = int(rng.integers(2, 7))
            gates = [random_gate(rng, width) for _ in range(int(rng.integers(1, 4)))]
            try:
                validate_layer(layer(*gates), STRICT, width)
            except CircuitError:
                continue
            validate_layer(layer(*gates), WF, width)


class TestAccounting:
    def test_empty_circuit_depth_zero(self):
        c = Circuit(3, (Role.INPUT,) * 3)
        assert c.depth == 0 and c.width == 3 and c.ancilla_count == 0

    def test_depth_counts_layers(self):
        c = Circuit(2, (Role.INPUT, Role.TARGET),
                    (layer(hadamard(0)), layer(cnot(0, 1))))
        assert c.depth == 2

    def test_ancilla_count(self):
        c = Circuit(4, (Role.INPUT, Role.ANCILLA, Role.ANCILLA, Role.TARGET))
        assert c.ancilla_count == 2 and c.ancillae == (1, 2)
        assert c.data_qubits == (0, 3)

    def test_roles_length_must_match_width(self):
        with pytest.raises(CircuitError):
            Circuit(3, (Role.INPUT,) * 2)


class TestComposeInverse:
    def test_compose_concatenates_depth(self):
        rng = np.random.default_rng(0)
        a = random_circuit(rng, 3, 4)
        b = random_circuit(rng, 3, 2)
        assert compose(a, b).depth == a.depth + b.depth

    def test_compose_width_mismatch(self):
        rng = np.random.default_rng(1)
        with pytest.raises(CircuitError):
            compose(random_circuit(rng, 3, 1), random_circuit(rng, 4, 1))

    def test_inverse_of_hadamard_is_hadamard(self):
        c = Circuit(1, (Role.INPUT,), (layer(hadamard(0)),))
        assert inverse(c).layers == c.layers

    def test_inverse_negates_phase_angle(self):
        g = symmetric_phase(np.pi, (0,), 1)
        assert g.adjoint().theta == -np.pi

    def test_compose_with_inverse_is_identity_on_basis_states(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            width = int(rng.integers(2, 5))
            c = random_circuit(rng, width, int(rng.integers(1, 6)))
            roundtrip = compose(c, inverse(c))
            for b in range(1 << width):
                out = run(roundtrip, basis_state(width, b))
                assert abs(out[b] - 1) < 1e-12
                assert np.abs(out).max() <= 1 + 1e-12

    def test_inverse_unitary_is_conjugate_transpose(self):
        rng = np.random.default_rng(3)
        for width in (2, 3, 5, 8):
            c = random_circuit(rng, width, 5)
            u = unitary_of(c)
            v = unitary_of(inverse(c))
            assert np.abs(v - u.conj().T).max() <= 1e-12


class TestRemapAndNegationLowering:
    def test_remap_moves_gates(self):
        c = Circuit(2, (Role.INPUT, Role.TARGET), (layer(cnot(0, 1)),))
        r = remap_qubits(c, (3, 1), 4, (Role.INPUT,) * 4)
        assert r.layers[0].gates[0].controls == (3,)
        assert r.layers[0].gates[0].targets == (1,)

    def test_remap_rejects_non_injective(self):
        c = Circuit(2, (Role.INPUT,) * 2, (layer(cnot(0, 1)),))
        with pytest.raises(CircuitError):
            remap_qubits(c, (0, 0), 2, (Role.INPUT,) * 2)

    def test_lowering_preserves_unitary_and_strips_negations(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            width = int(rng.integers(2, 5))
            c = random_circuit(rng, width, 4)
            lowered = lower_negations(c)
            assert all(not g.negated for g in lowered.gates())
            assert np.abs(unitary_of(lowered) - unitary_of(c)).max() <= 1e-10

    def test_lowering_splits_mixed_polarity_layer(self):
        # one gate negates qubit 0 while the other reads it positively
        mixed = Circuit(3, (Role.INPUT,) * 3,
                        (layer(cnot(0, 1, negated=(0,)), cnot(0, 2)),), WF)
        lowered = lower_negations(mixed)
        assert all(not g.negated for g in lowered.gates())
        assert np.abs(unitary_of(lowered) - unitary_of(mixed)).max() <= 1e-12


class TestSerialization:
    def test_round_trip_is_exact(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            c = random_circuit(rng, int(rng.integers(2, 6)), int(rng.integers(0, 8)))
            back = circuit_from_json(circuit_to_json(c))
            assert back == c

    def test_gate_fields_in_document(self):
        import json
        c = Circuit(4, (Role.INPUT,) * 3 + (Role.TARGET,),
                    (layer(modq_gate(3, (0, 1), 3, negated=(1,))),), WF)
        doc = json.loads(circuit_to_json(c))
        assert doc["width"] == 4 and doc["discipline"] == "wf"
        assert doc["roles"] == ["input"] * 3 + ["target"]
        g = doc["layers"][0][0]
        assert g == {"kind": "modq", "controls": [0, 1], "neg": [1],
                     "targets": [3], "q": 3}

    def test_matrix_round_trip_bit_exact(self):
        rng = np.random.default_rng(7)
        from common import random_unitary
        u = random_unitary(rng, 4)
        c = Circuit(3, (Role.INPUT,) * 3,
                    (layer(controlled_u((2,), u, (0, 1))),))
        back = circuit_from_json(circuit_to_json(c))
        assert np.array_equal(back.layers[0].gates[0].matrix, u)

    def test_bad_json_raises(self):
        with pytest.raises(CircuitError):
            circuit_from_json("{nope")
        with pytest.raises(CircuitError):
            circuit_from_json('{"width": 2}')
