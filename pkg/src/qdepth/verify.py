"""
Oracle-based equivalence checking, named-construction registry, and
depth/width/ancilla scaling reports.

verify_construction drives a circuit over every basis state of its data
register (ancillae zeroed), compares full complex amplitudes against the
definitional gate semantics from qdepth.oracle, and tallies ancilla
leakage. Comparison is on amplitudes, not bit patterns: the parallelized
counting circuits are only correct because internal phases cancel, and a
bit-level check would pass even with phase bugs. Verification over the
basis inputs is deterministic; superposition spot checks use a fixed seed.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import classical as cc
from . import synth
from .ir import (
    Circuit, CircuitError, Discipline, Gate, Layer, Role, cnot, fanout,
    hadamard, modq_gate, symmetric_phase, controlled_u,
)
from .oracle import oracle_unitary
from .sim import (
    check_ancilla_purity, make_workspace, run, unitary_of, zero_state,
)

SIM_CAP_ENV = "QDEPTH_SIM_CAP"
TOL_ENV = "QDEPTH_TOL"
DEFAULT_SIM_CAP = 22
DEFAULT_ERROR_TOL = 1e-9
DEFAULT_LEAKAGE_TOL = 1e-10

CONSTRUCTIONS = ("cat", "fanout", "parity-fanout", "parity-cat",
                 "modq-seq", "modq-const", "ctrl-u", "rev-embed")


class SimulationCapExceeded(RuntimeError):
    """The register is too wide for amplitude-level verification."""


def sim_cap() -> int:
    return int(os.environ.get(SIM_CAP_ENV, DEFAULT_SIM_CAP))


def error_tol() -> float:
    return float(os.environ.get(TOL_ENV, DEFAULT_ERROR_TOL))


@dataclass
class VerificationReport:
    """Outcome of checking one synthesized circuit against its oracle."""
    construction: str
    n: int
    q: int | None
    discipline: str
    depth: int
    width: int
    copy_ancillae: int
    work_qubits: int
    max_error: float | None = None
    max_leakage: float | None = None
    passed: bool | None = None
    inputs_checked: int = 0
    structural_only: bool = False
    error_tol: float = DEFAULT_ERROR_TOL
    leakage_tol: float = DEFAULT_LEAKAGE_TOL

    def to_dict(self) -> dict:
        return {"construction": self.construction, "n": self.n, "q": self.q,
                "discipline": self.discipline, "depth": self.depth,
                "width": self.width, "copy_ancillae": self.copy_ancillae,
                "work_qubits": self.work_qubits, "max_error": self.max_error,
                "max_leakage": self.max_leakage, "pass": self.passed,
                "inputs_checked": self.inputs_checked,
                "structural_only": self.structural_only,
                "error_tol": self.error_tol, "leakage_tol": self.leakage_tol}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        head = (f"construction={self.construction} n={self.n}"
                + (f" q={self.q}" if self.q is not None else "")
                + f" discipline={self.discipline} depth={self.depth}"
                  f" width={self.width} ancillae={self.copy_ancillae}"
                  f" work={self.work_qubits}")
        if self.structural_only:
            return head + " (structural only)"
        verdict = "pass" if self.passed else "FAIL"
        return (head + f" max_error={self.max_error:.3g}"
                       f" leakage={self.max_leakage:.3g}"
                       f" inputs={self.inputs_checked} {verdict}")


def _embedding_indices(width: int, data_qubits) -> np.ndarray:
    ys = np.arange(1 << len(data_qubits))
    emb = np.zeros(ys.size, dtype=np.int64)
    for j, qb in enumerate(data_qubits):
        emb |= ((ys >> j) & 1) << qb
    return emb


def verify_construction(circuit: Circuit, oracle: Gate, data_qubits, ancillae,
                        *, superpositions: int = 0, seed: int = 0,
                        cap: int | None = None) -> tuple[float, float, int]:
    """Compare the circuit against an oracle gate over the data register.

    Runs every basis state of the data register (ancillae at |0>) through
    the circuit and measures the max amplitude deviation from the oracle
    image, plus the max ancilla leakage. Optionally also checks random
    superpositions of the data register (l2 residual). Returns
    (max_error, max_leakage, inputs_checked).
    """
    data_qubits = tuple(data_qubits)
    ancillae = tuple(ancillae)
    if len(data_qubits) + len(ancillae) != circuit.width:
        raise CircuitError("data and ancilla registers must partition the circuit")
    cap = sim_cap() if cap is None else cap
    if circuit.width > cap:
        raise SimulationCapExceeded(
            f"{circuit.width}-qubit register exceeds the {cap}-qubit simulation cap")

    d = len(data_qubits)
    oracle_u = oracle_unitary(oracle, d)
    emb = _embedding_indices(circuit.width, data_qubits)
    workspace = make_workspace(circuit.width)
    initial = np.zeros(1 << circuit.width, dtype=complex)
    abs_buf = np.empty(1 << circuit.width, dtype=float)
    max_error = 0.0
    max_leak = 0.0
    checked = 0

    def drive(data_vec: np.ndarray, expected: np.ndarray) -> tuple[float, np.ndarray, float]:
        # every index outside the embedded data block has an ancilla bit
        # set, so zeroing the block leaves exactly the leaked amplitudes
        initial[emb] = data_vec
        out = run(circuit, initial, workspace)
        initial[emb] = 0.0
        residual = out[emb] - expected
        out[emb] = 0.0
        leak = float(np.vdot(out, out).real)
        np.abs(out, out=abs_buf)
        return leak, residual, float(abs_buf.max())

    for x in range(1 << d):
        leak, residual, stray = drive(_one_hot(d, x), oracle_u[:, x])
        max_leak = max(max_leak, leak)
        max_error = max(max_error, float(np.abs(residual).max()), stray)
        checked += 1

    if superpositions:
        rng = np.random.default_rng(seed)
        for _ in range(superpositions):
            psi = rng.normal(size=1 << d) + 1j * rng.normal(size=1 << d)
            psi /= np.linalg.norm(psi)
            leak, residual, _ = drive(psi, oracle_u @ psi)
            max_leak = max(max_leak, leak)
            # l2 residual including amplitudes that strayed off the block
            max_error = max(max_error, float(
                np.sqrt(np.linalg.norm(residual) ** 2 + leak)))
            checked += 1

    return max_error, max_leak, checked


def _one_hot(d: int, x: int) -> np.ndarray:
    v = np.zeros(1 << d, dtype=complex)
    v[x] = 1.0
    return v


# --- named constructions ---

_U_BY_NAME = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "h": np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
}


def _u_matrix(name: str, theta: float | None) -> np.ndarray:
    if name == "phase":
        if theta is None:
            raise CircuitError("u 'phase' requires theta")
        return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=complex)
    try:
        return _U_BY_NAME[name]
    except KeyError:
        raise CircuitError(f"unknown one-qubit unitary {name!r}") from None


@dataclass(frozen=True)
class Built:
    """A named construction with everything needed to verify it."""
    name: str
    n: int
    q: int | None
    circuit: Circuit
    oracle: Gate | None           # None for cat / rev-embed (special checkers)
    data_qubits: tuple[int, ...]
    ancillae: tuple[int, ...]
    copy_ancillae: int
    work_qubits: int
    classical: cc.ClassicalCircuit | None = None


def build_construction(name: str, n: int | None = None, q: int | None = None,
                       discipline: Discipline = Discipline.WITH_FANOUT,
                       builder: str = "fanout", u: str = "x",
                       theta: float | None = None,
                       classical: cc.ClassicalCircuit | None = None) -> Built:
    """Instantiate a construction by name; see CONSTRUCTIONS for the list."""
    if name not in CONSTRUCTIONS:
        raise CircuitError(f"unknown construction {name!r}")
    if name == "rev-embed":
        if classical is None:
            raise CircuitError("rev-embed requires a classical circuit")
        circ = synth.reversible_embed(classical)
        data = tuple(range(classical.n_inputs + classical.n_outputs))
        return Built(name, classical.n_inputs, None, circ, None, data,
                     circ.ancillae, 0, circ.ancilla_count, classical)
    if n is None or n < 1:
        raise CircuitError(f"{name} requires n >= 1")

    if name == "cat":
        circ = synth.CAT_BUILDERS[builder](n)
        return Built(name, n, None, circ, None, tuple(range(n)), (),
                     n - 1, 0)
    if name == "fanout":
        circ = synth.fanout_gate(n)
        oracle = fanout(0, tuple(range(1, n + 1)))
        return Built(name, n, None, circ, oracle, tuple(range(n + 1)), (), 0, 0)

    parity_oracle = modq_gate(2, tuple(range(n)), n)
    if name == "parity-fanout":
        circ = synth.parity_from_fanout(n)
        return Built(name, n, 2, circ, parity_oracle, tuple(range(n + 1)), (), 0, 0)
    if name == "parity-cat":
        circ = synth.parity_via_catstate(n, builder)
        return Built(name, n, 2, circ, parity_oracle, tuple(range(n + 1)),
                     circ.ancillae, n - 1, 0)
    if name == "ctrl-u":
        mat = _u_matrix(u, theta)
        circ = synth.controlled_u_constant_depth(tuple(range(n)), mat, n)
        oracle = controlled_u(tuple(range(n)), mat, (n,))
        return Built(name, n, None, circ, oracle, tuple(range(n + 1)),
                     (n + 1,), 0, 1)

    if q is None or q < 2:
        raise CircuitError(f"{name} requires q >= 2")
    modq_oracle = modq_gate(q, tuple(range(n)), n)
    if name == "modq-seq":
        circ = synth.modq_sequential(n, q)
        k = (q - 1).bit_length()
        return Built(name, n, q, circ, modq_oracle, tuple(range(n + 1)),
                     circ.ancillae, 0, k)
    # modq-const
    circ = synth.modq_constant_depth(n, q, discipline)
    k = (q - 1).bit_length()
    return Built(name, n, q, circ, modq_oracle, tuple(range(n + 1)),
                 circ.ancillae, n * k, k)


def _verify_cat(built: Built, samples: int = 20,
                seed: int = 7) -> tuple[float, float, int]:
    rng = np.random.default_rng(seed)
    w = built.circuit.width
    max_err = 0.0
    for _ in range(samples):
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        norm = math.hypot(abs(a), abs(b))
        a, b = a / norm, b / norm
        state = zero_state(w)
        state[0], state[1] = a, b
        out = run(built.circuit, state)
        expected = zero_state(w)
        expected[0], expected[-1] = a, b
        max_err = max(max_err, float(np.abs(out - expected).max()))
    return max_err, 0.0, samples


def _verify_embedding(built: Built) -> tuple[float, float, int]:
    c = built.classical
    circ = built.circuit
    n, m = c.n_inputs, c.n_outputs
    workspace = make_workspace(circ.width)
    initial = np.zeros(1 << circ.width, dtype=complex)
    max_err = 0.0
    max_leak = 0.0
    checked = 0
    ys = range(1 << m) if n + m <= 12 else (0, (1 << m) - 1)
    for x in range(1 << n):
        fx = 0
        for j, bit in enumerate(c.evaluate([(x >> i) & 1 for i in range(n)])):
            fx |= bit << j
        for y in ys:
            initial[x | (y << n)] = 1.0
            out = run(circ, initial, workspace)
            initial[x | (y << n)] = 0.0
            max_leak = max(max_leak, check_ancilla_purity(out, circ.ancillae).leakage)
            out[x | ((y ^ fx) << n)] -= 1.0
            max_err = max(max_err, float(np.abs(out).max()))
            checked += 1
    return max_err, max_leak, checked


def verify_built(built: Built, *, structural_only: bool = False,
                 tol_err: float | None = None,
                 tol_leak: float = DEFAULT_LEAKAGE_TOL,
                 superpositions: int = 0, seed: int = 0,
                 cap: int | None = None) -> VerificationReport:
    """Run the right checker for a built construction and fill the report."""
    tol_err = error_tol() if tol_err is None else tol_err
    report = VerificationReport(
        construction=built.name, n=built.n, q=built.q,
        discipline=built.circuit.discipline.value, depth=built.circuit.depth,
        width=built.circuit.width, copy_ancillae=built.copy_ancillae,
        work_qubits=built.work_qubits, structural_only=structural_only,
        error_tol=tol_err, leakage_tol=tol_leak)
    if structural_only:
        return report
    cap = sim_cap() if cap is None else cap
    if built.circuit.width > cap:
        raise SimulationCapExceeded(
            f"{built.circuit.width}-qubit register exceeds the {cap}-qubit "
            f"simulation cap; rerun structural-only")
    if built.name == "cat":
        err, leak, checked = _verify_cat(built)
    elif built.name == "rev-embed":
        err, leak, checked = _verify_embedding(built)
    else:
        err, leak, checked = verify_construction(
            built.circuit, built.oracle, built.data_qubits, built.ancillae,
            superpositions=superpositions, seed=seed, cap=cap)
    report.max_error = err
    report.max_leakage = leak
    report.inputs_checked = checked
    report.passed = err <= tol_err and leak <= tol_leak
    return report


# --- scaling tables ---

@dataclass
class ScalingTable:
    construction: str
    q: int | None
    discipline: str
    rows: list[tuple[int, int, int, int]]  # (n, depth, width, ancillae)
    verdict: str = field(default="")

    def to_text(self) -> str:
        lines = ["n\tdepth\twidth\tancillae"]
        lines += [f"{n}\t{d}\t{w}\t{a}" for n, d, w, a in self.rows]
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({"construction": self.construction, "q": self.q,
                           "discipline": self.discipline,
                           "rows": [list(r) for r in self.rows],
                           "verdict": self.verdict})


def _classify_depths(ns, depths) -> str:
    if len(set(depths)) == 1:
        return "constant"
    logs = [d - math.ceil(math.log2(n)) for n, d in zip(ns, depths)]
    if len(set(logs)) == 1:
        return "logarithmic"
    diffs = [b - a for a, b in zip(depths, depths[1:])]
    if len(set(diffs)) == 1 and diffs[0] > 0:
        return "linear"
    if all(d > 0 for d in diffs):
        return "increasing"
    return "irregular"


def depth_scaling_table(name: str, q: int | None, n_range,
                        discipline: Discipline = Discipline.WITH_FANOUT,
                        builder: str = "fanout") -> ScalingTable:
    """Tabulate (n, depth, width, ancillae); no simulation involved."""
    rows = []
    ns = list(n_range)
    for n in ns:
        b = build_construction(name, n=n, q=q, discipline=discipline,
                               builder=builder)
        c = b.circuit
        rows.append((n, c.depth, c.width, c.ancilla_count))
    verdict = _classify_depths(ns, [r[1] for r in rows])
    return ScalingTable(name, q, discipline.value, rows, verdict)


# --- matrix identities ---

def identity_checks() -> list[tuple[str, float, bool]]:
    """The two Hadamard-conjugation identities, checked as matrices.

    1. A controlled-not with its target conjugated by Hadamards equals the
       two-qubit controlled pi-shift.
    2. A fanout gate driven by the last qubit, conjugated by a layer of
       Hadamards on every wire, equals the three-input parity gate.
    Returns (name, max entry error, passed at 1e-12) per identity.
    """
    results = []
    roles = (Role.INPUT, Role.TARGET)
    h_cnot_h = Circuit(2, roles, (Layer((hadamard(1),)),
                                  Layer((cnot(0, 1),)),
                                  Layer((hadamard(1),))))
    want = oracle_unitary(symmetric_phase(math.pi, (0,), 1), 2)
    err = float(np.abs(unitary_of(h_cnot_h) - want).max())
    results.append(("cnot-h-conjugation-is-controlled-pi-shift", err, err <= 1e-12))

    n = 3
    circ = synth.parity_from_fanout(n)
    want = oracle_unitary(modq_gate(2, tuple(range(n)), n), n + 1)
    err = float(np.abs(unitary_of(circ) - want).max())
    results.append(("fanout-h-conjugation-is-parity", err, err <= 1e-12))
    return results
