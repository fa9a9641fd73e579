"""
Circuit constructions: cat states, fanout, parity, counting gates for an
arbitrary modulus, wide controlled-U through one ancilla, and embeddings
of classical Boolean circuits into reversible form.

Layer counts are the interesting output here. The parity and mod-q
builders come in two flavors: a sequential reference whose depth grows
with the input count, and a parallelized form whose depth does not,
obtained by copying shared qubits cat-style so that diagonal gates can
fire simultaneously. Under the strict layering discipline the cat copies
cost an extra ceil(log2 n) layers per copy phase; with the fanout
primitive they cost one.

All builders are pure functions returning validated, immutable circuits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .classical import ClassicalCircuit
from .ir import (
    MAX_BLOCK_QUBITS,
    Circuit,
    CircuitError,
    Discipline,
    Gate,
    GateKind,
    Layer,
    Role,
    cnot,
    controlled_u,
    fanout,
    hadamard,
    inverse,
    modq_gate,
    pauli_x,
    remap_qubits,
    symmetric_phase,
    toffoli,
)

PLAN_TOL = 1e-10


# --- cat states and fanout ---

def cat_log_depth(n: int) -> Circuit:
    """Copy qubit 0 onto n-1 fresh qubits by doubling: depth ceil(log2 n).

    Maps (a|0> + b|1>)|0...0> to a|0...0> + b|1...1>. Each round, every
    already-written qubit drives a controlled-not onto a fresh one.
    """
    if n < 1:
        raise CircuitError("cat circuit needs n >= 1 qubits")
    roles = (Role.INPUT,) + (Role.ANCILLA,) * (n - 1)
    layers = []
    written = 1
    while written < n:
        fresh = min(written, n - written)
        layers.append(Layer(tuple(cnot(i, written + i) for i in range(fresh))))
        written += fresh
    return Circuit(n, roles, tuple(layers), Discipline.STRICT)


def cat_fanout(n: int) -> Circuit:
    """Same map as cat_log_depth in one layer, using the fanout primitive."""
    if n < 1:
        raise CircuitError("cat circuit needs n >= 1 qubits")
    roles = (Role.INPUT,) + (Role.ANCILLA,) * (n - 1)
    layers = () if n == 1 else (Layer((fanout(0, tuple(range(1, n))),)),)
    return Circuit(n, roles, layers, Discipline.WITH_FANOUT)


CAT_BUILDERS: dict[str, Callable[[int], Circuit]] = {
    "fanout": cat_fanout,
    "log-cat": cat_log_depth,
}


def fanout_gate(n: int) -> Circuit:
    """One fanout gate: |x; t_1..t_n> -> |x; t_1^x, ..., t_n^x>, depth 1."""
    if n < 1:
        raise CircuitError("fanout needs n >= 1 targets")
    roles = (Role.INPUT,) + (Role.TARGET,) * n
    layer = Layer((fanout(0, tuple(range(1, n + 1))),))
    return Circuit(n + 1, roles, (layer,), Discipline.WITH_FANOUT)


# --- parity ---

def _h_layer(qubits) -> Layer:
    return Layer(tuple(hadamard(q) for q in qubits))


def parity_from_fanout(n: int) -> Circuit:
    """Parity on inputs 0..n-1 into target n, built from one fanout gate.

    Hadamard conjugation reverses every controlled-not, so a fanout gate
    driven by the target qubit, sandwiched between Hadamard layers on all
    wires, flips the target iff an odd number of inputs are set. Depth 3,
    no extra ancillae.
    """
    if n < 1:
        raise CircuitError("parity needs n >= 1 inputs")
    roles = (Role.INPUT,) * n + (Role.TARGET,)
    hs = _h_layer(range(n + 1))
    mid = Layer((fanout(n, tuple(range(n))),))
    return Circuit(n + 1, roles, (hs, mid, hs), Discipline.WITH_FANOUT)


def fanout_from_parity(n: int) -> Circuit:
    """Fanout from qubit 0 onto 1..n, built from one parity gate.

    The same Hadamard conjugation in the other direction: a parity gate
    reading qubits 1..n into qubit 0, between Hadamard layers. Depth 3.
    """
    if n < 1:
        raise CircuitError("fanout needs n >= 1 targets")
    roles = (Role.INPUT,) + (Role.TARGET,) * n
    hs = _h_layer(range(n + 1))
    mid = Layer((modq_gate(2, tuple(range(1, n + 1)), 0),))
    return Circuit(n + 1, roles, (hs, mid, hs), Discipline.STRICT)


def parity_via_catstate(n: int, builder: str | Callable[[int], Circuit] = "fanout") -> Circuit:
    """Parity on inputs 0..n-1 into target n using n-1 copy ancillae.

    The parity gate is a product of controlled pi-shifts once the target
    is Hadamard-conjugated. Those shifts are diagonal, so they can all
    fire in one layer after the target is copied cat-style onto the
    ancillae: H on target, copy, one layer of controlled pi-shifts from
    input i to copy i, uncopy, H. Depth is 2*depth(copy) + 3 and every
    copy ancilla returns to |0>.

    `builder` produces the n-qubit copy circuit (source on qubit 0); any
    circuit that maps a one-qubit state plus zeroed ancillae onto the
    corresponding cat state will do.
    """
    if n < 1:
        raise CircuitError("parity needs n >= 1 inputs")
    build = CAT_BUILDERS[builder] if isinstance(builder, str) else builder
    cat = build(n)
    if cat.width != n:
        raise CircuitError(
            f"cat builder produced width {cat.width}, expected {n}")
    target = n
    block = (target,) + tuple(range(n + 1, 2 * n))  # target plus n-1 copies
    width = 2 * n
    roles = (Role.INPUT,) * n + (Role.TARGET,) + (Role.ANCILLA,) * (n - 1)
    uses_fanout = any(g.kind is GateKind.FANOUT for g in cat.gates())
    disc = Discipline.WITH_FANOUT if uses_fanout else Discipline.STRICT
    copy = remap_qubits(cat, block, width, roles, discipline=disc)
    shifts = Layer(tuple(symmetric_phase(math.pi, (i,), block[i]) for i in range(n)))
    layers = ((Layer((hadamard(target),)),)
              + copy.layers + (shifts,) + inverse(copy).layers
              + (Layer((hadamard(target),)),))
    return Circuit(width, roles, layers, disc)


# --- wide controlled-U via one ancilla ---

def controlled_u_constant_depth(controls, u, target: int,
                                ancilla: int | None = None) -> Circuit:
    """Apply a 2x2 unitary to `target` iff all controls are 1; depth 3.

    A Toffoli ANDs the controls onto a zeroed ancilla, a two-qubit
    controlled-U fires from the ancilla, and a second Toffoli restores it.
    """
    controls = tuple(int(c) for c in controls)
    if not controls:
        raise CircuitError("need at least one control")
    if ancilla is None:
        ancilla = max(controls + (target,)) + 1
    if ancilla in controls or ancilla == target:
        raise CircuitError("ancilla overlaps controls or target")
    width = max(controls + (target, ancilla)) + 1
    roles = [Role.INPUT] * width
    roles[target] = Role.TARGET
    roles[ancilla] = Role.ANCILLA
    layers = (Layer((toffoli(controls, ancilla),)),
              Layer((controlled_u((ancilla,), u, (target,)),)),
              Layer((toffoli(controls, ancilla),)))
    return Circuit(width, tuple(roles), layers, Discipline.STRICT)


# --- counting gates: flip target iff #true inputs is not a multiple of q ---

@dataclass(frozen=True)
class ModCountingPlan:
    """Matrices behind the mod-q counter on k = ceil(log2 q) qubits.

    `step` cycles the first q basis states (entry [x][(x+1) mod q] is 1)
    and fixes the rest, so applying it s times to |0> leaves |0> exactly
    when s is a multiple of q. `basis_change` diagonalizes it:
    basis_change^dagger . diag(phases) . basis_change == step, with the
    cycle eigenvalues being the q-th roots of unity and fixed states 1.
    """
    q: int
    k: int
    step: np.ndarray
    basis_change: np.ndarray
    phases: np.ndarray

    @property
    def diagonal_matrix(self) -> np.ndarray:
        return np.diag(self.phases)

    def validate(self, tol: float = PLAN_TOL) -> None:
        dim = 1 << self.k
        m = np.linalg.matrix_power(self.step, self.q)
        if np.abs(m - np.eye(dim)).max() > tol:
            raise CircuitError(f"step matrix does not have period {self.q}")
        recon = self.basis_change.conj().T @ self.diagonal_matrix @ self.basis_change
        if np.abs(recon - self.step).max() > tol:
            raise CircuitError("diagonalization does not reproduce the step matrix")
        roots = self.phases ** self.q
        if np.abs(roots - 1).max() > tol:
            raise CircuitError("phases are not q-th roots of unity")


def modq_plan(q: int) -> ModCountingPlan:
    """Build and validate the counting matrices for modulus q."""
    if q < 2:
        raise CircuitError("modulus must be >= 2")
    k = (q - 1).bit_length()  # ceil(log2 q) without float round-off
    dim = 1 << k
    step = np.zeros((dim, dim), dtype=complex)
    for x in range(q):
        step[x, (x + 1) % q] = 1.0
    for x in range(q, dim):
        step[x, x] = 1.0
    # Fourier eigenbasis of the q-cycle, identity on the fixed states.
    basis_change = np.eye(dim, dtype=complex)
    jx = np.outer(np.arange(q), np.arange(q))
    basis_change[:q, :q] = np.exp(-2j * np.pi * jx / q) / math.sqrt(q)
    phases = np.ones(dim, dtype=complex)
    phases[:q] = np.exp(2j * np.pi * np.arange(q) / q)
    plan = ModCountingPlan(q, k, step, basis_change, phases)
    plan.validate()
    return plan


def _modq_register(n: int, q: int):
    plan = modq_plan(q)
    if plan.k > MAX_BLOCK_QUBITS:
        raise CircuitError(
            f"modulus {q} needs a {plan.k}-qubit block, cap is {MAX_BLOCK_QUBITS}")
    if n < 1:
        raise CircuitError("counting gate needs n >= 1 inputs")
    target = n
    work = tuple(range(n + 1, n + 1 + plan.k))
    roles = ((Role.INPUT,) * n + (Role.TARGET,) + (Role.ANCILLA,) * plan.k)
    return plan, target, work, roles


def _or_detect_layers(work, target: int) -> tuple[Layer, Layer]:
    # OR of the work bits onto the target: negate the target, then a
    # Toffoli that fires when every work bit is 0 (all controls negated).
    return (Layer((pauli_x(target),)),
            Layer((toffoli(work, target, negated=work),)))


def modq_sequential(n: int, q: int) -> Circuit:
    """Reference mod-q gate on inputs 0..n-1 into target n; depth 2n + 2.

    Each input advances a k-qubit counter register by one controlled step;
    the register leaves |0> exactly when the count of true inputs is not a
    multiple of q, which an OR detects onto the target. The inverse steps
    then return the counter to |0>. Depth grows linearly with n.
    """
    plan, target, work, roles = _modq_register(n, q)
    width = n + 1 + plan.k
    steps = [Layer((controlled_u((i,), plan.step, work),)) for i in range(n)]
    compute = Circuit(width, roles, tuple(steps), Discipline.STRICT)
    layers = compute.layers + _or_detect_layers(work, target) + inverse(compute).layers
    return Circuit(width, roles, layers, Discipline.STRICT)


def _strict_copy_layers(work, copies) -> list[Layer]:
    # Fan each work qubit onto its n copies with controlled-nots: one seed
    # layer, then doubling confined to the copy block, so the phase costs
    # exactly 1 + ceil(log2 n) layers.
    n = len(copies)
    layers = [Layer(tuple(cnot(w, copies[0][j]) for j, w in enumerate(work)))]
    written = 1
    while written < n:
        fresh = min(written, n - written)
        layers.append(Layer(tuple(
            cnot(copies[i][j], copies[written + i][j])
            for i in range(fresh) for j in range(len(work)))))
        written += fresh
    return layers


def modq_constant_depth(n: int, q: int,
                        discipline: Discipline = Discipline.WITH_FANOUT) -> Circuit:
    """Mod-q gate whose layer count depends only on q, never on n.

    Layout: inputs 0..n-1, target n, a k-qubit counter register, and n
    k-qubit copy blocks (n*k copy ancillae in all). The controlled counter
    steps of the sequential form all commute once diagonalized, so after a
    basis change on the counter the circuit fans the counter out onto the
    copy blocks, applies every input's controlled diagonal simultaneously
    in one layer, unfans, and changes basis back. An OR then detects a
    nonzero count onto the target and the whole compute phase is reversed
    to restore all n*k + k ancillae.

    Under Discipline.WITH_FANOUT each copy phase is one layer of k fanout
    gates; under Discipline.STRICT it becomes 1 + ceil(log2 n) layers of
    controlled-nots, and the total depth grows by exactly ceil(log2 n) per
    copy phase (there are four).
    """
    plan, target, work, roles = _modq_register(n, q)
    k = plan.k
    base = n + 1 + k
    copies = [tuple(base + i * k + j for j in range(k)) for i in range(n)]
    width = base + n * k
    roles = roles + (Role.ANCILLA,) * (n * k)

    if discipline is Discipline.WITH_FANOUT:
        copy_layers = [Layer(tuple(
            fanout(w, tuple(copies[i][j] for i in range(n)))
            for j, w in enumerate(work)))]
    else:
        copy_layers = _strict_copy_layers(work, copies)

    diag_layer = Layer(tuple(
        controlled_u((i,), plan.diagonal_matrix, copies[i]) for i in range(n)))
    to_eigen = Layer((controlled_u((), plan.basis_change, work),))
    from_eigen = Layer((controlled_u((), plan.basis_change.conj().T, work),))

    compute = Circuit(width, roles,
                      (to_eigen, *copy_layers, diag_layer,
                       *reversed(copy_layers), from_eigen),
                      discipline)
    layers = compute.layers + _or_detect_layers(work, target) + inverse(compute).layers
    return Circuit(width, roles, layers, discipline)


# --- classical circuits to reversible form ---

def _embed_gate(cgate, qubits: tuple[int, ...], tq: int) -> Gate:
    if cgate.op == "and":
        return toffoli(qubits, tq)
    if cgate.op == "or":
        # flips the target iff at least one input is true: with fan-in f,
        # any count in 1..f is not a multiple of f+1
        return modq_gate(len(qubits) + 1, qubits, tq)
    if cgate.op == "not":
        return cnot(qubits[0], tq, negated=qubits)
    return modq_gate(2, qubits, tq)  # xor


def reversible_embed(c: ClassicalCircuit) -> Circuit:
    """Reversible form of a classical circuit on n + m + w*d qubits.

    Qubits 0..n-1 keep the input, the next m are xor'ed with the outputs,
    and w*d ancillae (one slot per layer position) hold intermediate gate
    values. Every classical gate becomes a single self-inverse quantum
    gate that xors its value onto its slot; the final layer writes into
    the output qubits directly; then layers d-1..1 replay in reverse to
    erase the ancillae. Depth is exactly 2d - 1.
    """
    n, m, w, d = c.n_inputs, c.n_outputs, c.width, c.depth
    width = n + m + w * d
    roles = (Role.INPUT,) * n + (Role.TARGET,) * m + (Role.ANCILLA,) * (w * d)

    wire_qubit = list(range(n))
    quantum_layers = []
    for level, layer in enumerate(c.layers):
        gates = []
        for slot, cgate in enumerate(layer):
            if level == d - 1:
                tq = n + slot                       # output qubit
            else:
                tq = n + m + level * w + slot       # ancilla slot
            gates.append(_embed_gate(
                cgate, tuple(wire_qubit[a] for a in cgate.args), tq))
            wire_qubit.append(tq)
        quantum_layers.append(Layer(tuple(gates)))

    layers = tuple(quantum_layers) + tuple(reversed(quantum_layers[:-1]))
    return Circuit(width, roles, layers, Discipline.WITH_FANOUT)
