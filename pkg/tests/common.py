"""Shared helpers for the test suite."""
from __future__ import annotations

import numpy as np

from qdepth.ir import (
    Circuit, Discipline, Gate, Layer, Role,
    cnot, controlled_u, fanout, hadamard, modq_gate, pauli_x, single_qubit,
    symmetric_phase, toffoli,
)

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def block_diag_gate_matrix(blocks) -> np.ndarray:
    """16x16 matrix from eight 2x2 blocks, block j on basis states 2j, 2j+1.

    This is the layout of the displayed three-input gate matrices: the
    fast (within-block) index is the target qubit, the block index is the
    three input bits.
    """
    u = np.zeros((16, 16), dtype=complex)
    for j, b in enumerate(blocks):
        u[2 * j:2 * j + 2, 2 * j:2 * j + 2] = b
    return u


# The three-input parity matrix as displayed: identity blocks on even
# input-weight patterns, X blocks on odd ones.
MOD2_3INPUT_MATRIX = block_diag_gate_matrix([I2, X2, X2, I2, X2, I2, I2, X2])
TOFFOLI_3INPUT_MATRIX = block_diag_gate_matrix([I2] * 7 + [X2])


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_gate(rng: np.random.Generator, width: int) -> Gate:
    kind = rng.choice(["h", "x", "u", "cnot", "toffoli", "modq", "fanout",
                       "phase", "cu"])
    qubits = list(rng.permutation(width))
    if kind == "h":
        return hadamard(qubits[0])
    if kind == "x":
        return pauli_x(qubits[0])
    if kind == "u":
        return single_qubit(random_unitary(rng, 2), qubits[0])
    if kind == "cnot":
        neg = (qubits[0],) if rng.random() < 0.3 else ()
        return cnot(qubits[0], qubits[1], negated=neg)
    if kind == "toffoli":
        nc = int(rng.integers(1, width))
        neg = tuple(q for q in qubits[:nc] if rng.random() < 0.3)
        return toffoli(qubits[:nc], qubits[nc], negated=neg)
    if kind == "modq":
        nc = int(rng.integers(1, width))
        return modq_gate(int(rng.integers(2, 6)), qubits[:nc], qubits[nc])
    if kind == "fanout":
        nt = int(rng.integers(1, width))
        return fanout(qubits[0], qubits[1:1 + nt])
    if kind == "phase":
        nc = int(rng.integers(0, width))
        return symmetric_phase(float(rng.uniform(-np.pi, np.pi)),
                               qubits[:nc], qubits[nc])
    nt = int(rng.integers(1, min(3, width)))
    nc = int(rng.integers(0, width - nt + 1))
    return controlled_u(qubits[nt:nt + nc], random_unitary(rng, 1 << nt),
                        qubits[:nt])


def random_circuit(rng: np.random.Generator, width: int, n_gates: int) -> Circuit:
    """Random mixed-kind circuit with one gate per layer."""
    layers = tuple(Layer((random_gate(rng, width),)) for _ in range(n_gates))
    roles = (Role.INPUT,) * width
    return Circuit(width, roles, layers, Discipline.WITH_FANOUT)
