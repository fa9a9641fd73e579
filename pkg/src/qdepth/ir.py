"""
Layered circuit representation: the gate set, layering disciplines, qubit
roles, and depth/width/ancilla accounting.

Gates, layers, and circuits are immutable once built and safe to share
across threads; all validation happens at construction time. The basis
convention is little-endian everywhere: qubit 0 is the least significant
bit of a basis index, and bitstrings printed by the tools put qubit 0
rightmost.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Explicit matrices must satisfy ||U+.U - I||_max <= UNITARY_TOL.
UNITARY_TOL = 1e-12

# Largest target block (in qubits) an explicit-matrix gate may act on;
# keeps serialized matrices at 2^4 x 2^4 or smaller.
MAX_BLOCK_QUBITS = 4


class CircuitError(ValueError):
    """Malformed gate, layer, or circuit."""


class LayeringError(CircuitError):
    """A layer violates its discipline's disjointness condition."""


class GateKind(Enum):
    SINGLE_QUBIT = "u"       # explicit 2x2 unitary on one qubit
    HADAMARD = "h"
    PAULI_X = "x"
    CNOT = "cnot"
    TOFFOLI = "toffoli"      # flip target iff all inputs true
    CONTROLLED_U = "cu"      # explicit 2^k x 2^k unitary on a k-qubit block
    MODQ = "modq"            # flip target iff #true inputs not divisible by q
    FANOUT = "fanout"        # xor one control onto every target at once
    PHASE = "phase"          # multiply the all-ones subspace by e^{i theta}


class Role(Enum):
    INPUT = "input"
    TARGET = "target"
    ANCILLA = "ancilla"      # must start and end in |0>


class Discipline(Enum):
    STRICT = "strict"        # gates in a layer act on pairwise disjoint qubits
    WITH_FANOUT = "wf"       # gates may share controls, never targets


_SELF_INVERSE = frozenset({
    GateKind.HADAMARD, GateKind.PAULI_X, GateKind.CNOT,
    GateKind.TOFFOLI, GateKind.MODQ, GateKind.FANOUT,
})


def _check_unitary(m: np.ndarray, dim: int) -> None:
    if m.shape != (dim, dim):
        raise CircuitError(f"matrix must be {dim}x{dim}, got {m.shape}")
    err = np.abs(m.conj().T @ m - np.eye(dim)).max()
    if err > UNITARY_TOL:
        raise CircuitError(f"matrix is not unitary (deviation {err:.3g})")


@dataclass(frozen=True, eq=False)
class Gate:
    """One primitive circuit element.

    `controls` and `targets` are disjoint qubit tuples; `negated` marks
    controls whose input is X-conjugated, so they fire on 0 instead of 1.
    `theta` applies to PHASE, `q` to MODQ, and `matrix` to SINGLE_QUBIT
    (2x2) and CONTROLLED_U (2^k x 2^k over the k targets, where bit j of
    the block index is targets[j]).
    """
    kind: GateKind
    controls: tuple[int, ...] = ()
    targets: tuple[int, ...] = ()
    negated: frozenset[int] = frozenset()
    theta: float | None = None
    q: int | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(int(c) for c in self.controls))
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "negated", frozenset(int(c) for c in self.negated))
        if self.matrix is not None:
            m = np.array(self.matrix, dtype=complex)
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)
        self._validate()

    def _validate(self) -> None:
        k = self.kind
        cs, ts = self.controls, self.targets
        if any(i < 0 for i in cs + ts):
            raise CircuitError("qubit indices must be nonnegative")
        if len(set(cs)) != len(cs) or len(set(ts)) != len(ts):
            raise CircuitError("duplicate qubit in controls or targets")
        if set(cs) & set(ts):
            raise CircuitError(f"controls and targets overlap: {set(cs) & set(ts)}")
        if not self.negated <= set(cs):
            raise CircuitError("negated qubits must be a subset of controls")

        if k in (GateKind.SINGLE_QUBIT, GateKind.HADAMARD, GateKind.PAULI_X):
            if cs or len(ts) != 1:
                raise CircuitError(f"{k.value} takes no controls and one target")
        elif k is GateKind.CNOT:
            if len(cs) != 1 or len(ts) != 1:
                raise CircuitError("cnot takes one control and one target")
        elif k is GateKind.TOFFOLI:
            if len(cs) < 1 or len(ts) != 1:
                raise CircuitError("toffoli takes >=1 controls and one target")
        elif k is GateKind.MODQ:
            if self.q is None or self.q < 2:
                raise CircuitError("modq requires q >= 2")
            if len(cs) < 1 or len(ts) != 1:
                raise CircuitError("modq takes >=1 inputs and one target")
        elif k is GateKind.FANOUT:
            if len(cs) != 1 or len(ts) < 1:
                raise CircuitError("fanout takes one control and >=1 targets")
        elif k is GateKind.PHASE:
            if self.theta is None or not math.isfinite(self.theta):
                raise CircuitError("phase requires a finite theta")
            if len(ts) != 1:
                raise CircuitError("phase takes one target")
        elif k is GateKind.CONTROLLED_U:
            if len(ts) < 1:
                raise CircuitError("cu takes >=1 targets")
            if len(ts) > MAX_BLOCK_QUBITS:
                raise CircuitError(
                    f"cu target block of {len(ts)} qubits exceeds cap {MAX_BLOCK_QUBITS}")

        if k is GateKind.SINGLE_QUBIT:
            if self.matrix is None:
                raise CircuitError("u requires an explicit 2x2 matrix")
            _check_unitary(self.matrix, 2)
        elif k is GateKind.CONTROLLED_U:
            if self.matrix is None:
                raise CircuitError("cu requires an explicit matrix")
            _check_unitary(self.matrix, 2 ** len(ts))
        elif self.matrix is not None:
            raise CircuitError(f"{k.value} does not take a matrix")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.controls) | frozenset(self.targets)

    def adjoint(self) -> "Gate":
        if self.kind in _SELF_INVERSE:
            return self
        if self.kind is GateKind.PHASE:
            return Gate(self.kind, self.controls, self.targets, self.negated,
                        theta=-self.theta)
        # SINGLE_QUBIT / CONTROLLED_U: conjugate transpose
        return Gate(self.kind, self.controls, self.targets, self.negated,
                    q=self.q, matrix=self.matrix.conj().T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gate):
            return NotImplemented
        if (self.kind, self.controls, self.targets, self.negated,
                self.theta, self.q) != (other.kind, other.controls,
                                        other.targets, other.negated,
                                        other.theta, other.q):
            return False
        if (self.matrix is None) != (other.matrix is None):
            return False
        return self.matrix is None or np.array_equal(self.matrix, other.matrix)

    def __repr__(self) -> str:
        bits = [self.kind.value]
        if self.controls:
            marks = ",".join(f"!{c}" if c in self.negated else str(c)
                             for c in self.controls)
            bits.append(f"({marks})")
        bits.append("->" + ",".join(map(str, self.targets)))
        if self.theta is not None:
            bits.append(f"theta={self.theta:g}")
        if self.q is not None:
            bits.append(f"q={self.q}")
        return " ".join(bits)


# --- gate constructors ---

_H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def hadamard(target: int) -> Gate:
    return Gate(GateKind.HADAMARD, targets=(target,))


def pauli_x(target: int) -> Gate:
    return Gate(GateKind.PAULI_X, targets=(target,))


def cnot(control: int, target: int, negated=()) -> Gate:
    return Gate(GateKind.CNOT, (control,), (target,), frozenset(negated))


def toffoli(controls, target: int, negated=()) -> Gate:
    return Gate(GateKind.TOFFOLI, tuple(controls), (target,), frozenset(negated))


def modq_gate(q: int, inputs, target: int, negated=()) -> Gate:
    return Gate(GateKind.MODQ, tuple(inputs), (target,), frozenset(negated), q=q)


def fanout(control: int, targets) -> Gate:
    return Gate(GateKind.FANOUT, (control,), tuple(targets))


def symmetric_phase(theta: float, controls, target: int, negated=()) -> Gate:
    return Gate(GateKind.PHASE, tuple(controls), (target,), frozenset(negated),
                theta=float(theta))


def single_qubit(matrix, target: int) -> Gate:
    return Gate(GateKind.SINGLE_QUBIT, targets=(target,), matrix=matrix)


def controlled_u(controls, matrix, targets, negated=()) -> Gate:
    return Gate(GateKind.CONTROLLED_U, tuple(controls), tuple(targets),
                frozenset(negated), matrix=matrix)


def gate_matrix_2x2(gate: Gate) -> np.ndarray:
    """The 2x2 matrix of a one-qubit gate (H, X, or explicit unitary)."""
    if gate.kind is GateKind.HADAMARD:
        return _H_MATRIX
    if gate.kind is GateKind.PAULI_X:
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if gate.kind is GateKind.SINGLE_QUBIT:
        return gate.matrix
    raise CircuitError(f"{gate.kind.value} has no standalone 2x2 matrix")


# --- layers and circuits ---

@dataclass(frozen=True)
class Layer:
    """Gates applied simultaneously; validity depends on the discipline."""
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))


def _pair_conflict(a: Gate, b: Gate, discipline: Discipline) -> str | None:
    """Why gates a and b cannot share a layer, or None if they can."""
    if discipline is Discipline.STRICT:
        shared = a.support & b.support
        if shared:
            return f"overlapping supports on qubit(s) {sorted(shared)}"
        return None
    # WITH_FANOUT: controls may be shared (both gates are diagonal there),
    # but a target may not appear anywhere in the other gate: two writes to
    # one qubit, or a write feeding another gate's control, do not commute.
    ta, tb = set(a.targets), set(b.targets)
    if ta & tb:
        return f"overlapping targets on qubit(s) {sorted(ta & tb)}"
    cross = (ta & set(b.controls)) | (tb & set(a.controls))
    if cross:
        return f"target of one gate is a control of the other on qubit(s) {sorted(cross)}"
    return None


def validate_layer(layer: Layer, discipline: Discipline, width: int) -> None:
    """Raise LayeringError/CircuitError unless `layer` is a valid layer."""
    gates = layer.gates
    for g in gates:
        out = [i for i in g.support if i >= width]
        if out:
            raise CircuitError(f"qubit index {out[0]} out of range for width {width}")
    for i in range(len(gates)):
        for j in range(i + 1, len(gates)):
            why = _pair_conflict(gates[i], gates[j], discipline)
            if why is not None:
                raise LayeringError(
                    f"gates {i} and {j} conflict under {discipline.value}: {why} "
                    f"({gates[i]!r} vs {gates[j]!r})")


@dataclass(frozen=True)
class Circuit:
    """An ordered list of layers over a register with per-qubit roles.

    depth is the layer count; that is the quantity the constant-depth
    constructions in qdepth.synth are measured by.
    """
    width: int
    roles: tuple[Role, ...]
    layers: tuple[Layer, ...] = ()
    discipline: Discipline = Discipline.STRICT

    def __post_init__(self):
        object.__setattr__(self, "roles", tuple(self.roles))
        object.__setattr__(self, "layers", tuple(
            l if isinstance(l, Layer) else Layer(tuple(l)) for l in self.layers))
        if self.width < 0:
            raise CircuitError("width must be nonnegative")
        if len(self.roles) != self.width:
            raise CircuitError(f"{len(self.roles)} roles for width {self.width}")
        for layer in self.layers:
            validate_layer(layer, self.discipline, self.width)

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def ancillae(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.roles) if r is Role.ANCILLA)

    @property
    def ancilla_count(self) -> int:
        return len(self.ancillae)

    @property
    def data_qubits(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.roles) if r is not Role.ANCILLA)

    def gates(self):
        for layer in self.layers:
            yield from layer.gates

    def describe(self) -> str:
        lines = [f"width={self.width} depth={self.depth} "
                 f"ancillae={self.ancilla_count} discipline={self.discipline.value}"]
        for i, layer in enumerate(self.layers):
            lines.append(f"layer {i}: " + "; ".join(repr(g) for g in layer.gates))
        return "\n".join(lines)


def compose(a: Circuit, b: Circuit) -> Circuit:
    """Concatenate the layer lists of two circuits over the same register."""
    if a.width != b.width:
        raise CircuitError(f"width mismatch: {a.width} vs {b.width}")
    if a.roles != b.roles:
        raise CircuitError("compose requires identical qubit roles")
    disc = (Discipline.WITH_FANOUT
            if Discipline.WITH_FANOUT in (a.discipline, b.discipline)
            else Discipline.STRICT)
    return Circuit(a.width, a.roles, a.layers + b.layers, disc)


def inverse(c: Circuit) -> Circuit:
    """Reverse the layer order and replace each gate by its adjoint."""
    layers = tuple(Layer(tuple(g.adjoint() for g in layer.gates))
                   for layer in reversed(c.layers))
    return Circuit(c.width, c.roles, layers, c.discipline)


def remap_qubits(c: Circuit, mapping, width: int, roles, discipline=None) -> Circuit:
    """Embed a circuit into a wider register; qubit i becomes mapping[i]."""
    mapping = tuple(int(m) for m in mapping)
    if len(mapping) != c.width or len(set(mapping)) != len(mapping):
        raise CircuitError("mapping must be injective and cover the circuit width")

    def remap_gate(g: Gate) -> Gate:
        return Gate(g.kind,
                    tuple(mapping[i] for i in g.controls),
                    tuple(mapping[i] for i in g.targets),
                    frozenset(mapping[i] for i in g.negated),
                    theta=g.theta, q=g.q, matrix=g.matrix)

    layers = tuple(Layer(tuple(remap_gate(g) for g in layer.gates))
                   for layer in c.layers)
    return Circuit(width, tuple(roles), layers,
                   c.discipline if discipline is None else discipline)


def lower_negations(c: Circuit) -> Circuit:
    """Expand negated controls into explicit X - gate - X layers.

    Gates in one layer are grouped so that every group reads each shared
    qubit with a single polarity; each group with negations becomes three
    layers. Depth generally grows, which is the point: the result counts
    the conjugation layers explicitly.
    """
    new_layers: list[Layer] = []
    for layer in c.layers:
        plain = [g for g in layer.gates if not g.negated]
        pending = [g for g in layer.gates if g.negated]
        if plain:
            new_layers.append(Layer(tuple(plain)))
        # A group can be conjugated by one X layer iff no qubit it negates
        # is read positively or written by another gate in the group.
        groups: list[tuple[list[Gate], set[int], set[int]]] = []
        for g in pending:
            plain_use = (set(g.controls) - g.negated) | set(g.targets)
            placed = False
            for gates, neg, used in groups:
                if (g.negated & used) or (plain_use & neg):
                    continue
                gates.append(g)
                neg |= g.negated
                used |= plain_use
                placed = True
                break
            if not placed:
                groups.append(([g], set(g.negated), plain_use))
        for gates, neg, _ in groups:
            xs = Layer(tuple(pauli_x(q) for q in sorted(neg)))
            stripped = Layer(tuple(
                Gate(g.kind, g.controls, g.targets, frozenset(),
                     theta=g.theta, q=g.q, matrix=g.matrix) for g in gates))
            new_layers += [xs, stripped, xs]
    return Circuit(c.width, c.roles, tuple(new_layers), c.discipline)


# --- JSON serialization ---
# Document shape: {"width": int, "discipline": "strict"|"wf",
#   "roles": [str per qubit], "layers": [[gate objects]]}; a gate object is
#   {"kind": str, "controls": [int], "neg": [int], "targets": [int],
#    "theta": float?, "q": int?, "matrix": [[re, im], ...] row-major?}.

def _gate_to_obj(g: Gate) -> dict:
    obj = {"kind": g.kind.value, "controls": list(g.controls),
           "neg": sorted(g.negated), "targets": list(g.targets)}
    if g.theta is not None:
        obj["theta"] = g.theta
    if g.q is not None:
        obj["q"] = g.q
    if g.matrix is not None:
        obj["matrix"] = [[float(z.real), float(z.imag)] for z in g.matrix.ravel()]
    return obj


def _gate_from_obj(obj: dict) -> Gate:
    matrix = None
    if "matrix" in obj:
        flat = np.array([complex(re, im) for re, im in obj["matrix"]])
        dim = math.isqrt(flat.size)
        if dim * dim != flat.size:
            raise CircuitError(f"matrix of length {flat.size} is not square")
        matrix = flat.reshape(dim, dim)
    return Gate(GateKind(obj["kind"]), tuple(obj.get("controls", ())),
                tuple(obj.get("targets", ())), frozenset(obj.get("neg", ())),
                theta=obj.get("theta"), q=obj.get("q"), matrix=matrix)


def circuit_to_json(c: Circuit, indent: int | None = None) -> str:
    doc = {"width": c.width,
           "discipline": c.discipline.value,
           "roles": [r.value for r in c.roles],
           "layers": [[_gate_to_obj(g) for g in layer.gates] for layer in c.layers]}
    return json.dumps(doc, indent=indent)


def circuit_from_json(text: str) -> Circuit:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CircuitError(f"invalid circuit JSON: {e}") from e
    try:
        roles = tuple(Role(r) for r in doc["roles"])
        layers = tuple(Layer(tuple(_gate_from_obj(o) for o in layer))
                       for layer in doc["layers"])
        return Circuit(int(doc["width"]), roles, layers,
                       Discipline(doc["discipline"]))
    except (KeyError, TypeError) as e:
        raise CircuitError(f"invalid circuit JSON: missing/bad field {e}") from e
