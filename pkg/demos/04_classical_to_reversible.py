"""
Turning an ordinary Boolean circuit into a reversible one.

Every classical gate gets a zeroed ancilla and becomes a self-inverse
quantum gate that xors its value onto it; the last layer xors straight
into the output qubits; then the earlier layers replay in reverse to wipe
the ancillae. A depth-d, width-w circuit with n inputs and m outputs lands
on n + m + w*d qubits at depth exactly 2d - 1, inputs preserved, ancillae
back at |0>.
"""
import numpy as np

from qdepth import ClassicalCircuit, ClassicalGate, reversible_embed
from qdepth.sim import basis_state, check_ancilla_purity, run

# majority-of-three: pairwise ANDs, then an OR
majority = ClassicalCircuit(3, (
    (ClassicalGate("and", (0, 1)), ClassicalGate("and", (0, 2)),
     ClassicalGate("and", (1, 2))),
    (ClassicalGate("or", (3, 4, 5)),),
))
circ = reversible_embed(majority)
print(f"classical: depth {majority.depth}, width {majority.width}, "
      f"{majority.n_inputs} inputs, {majority.n_outputs} output")
print(f"reversible: depth {circ.depth} (= 2d-1), width {circ.width} "
      f"(= n+m+wd), {circ.ancilla_count} ancillae")
print()
print(circ.describe())

print("\ntruth table via simulation (x0 x1 x2 -> maj):")
for x in range(8):
    bits = [(x >> i) & 1 for i in range(3)]
    out = run(circ, basis_state(circ.width, x))
    hit = int(np.flatnonzero(np.abs(out) > 0.5)[0])
    maj = (hit >> 3) & 1
    pure = check_ancilla_purity(out, circ.ancillae).pure
    print(f"  {bits[0]} {bits[1]} {bits[2]}  ->  {maj}   "
          f"(matches: {maj == majority.evaluate(bits)[0]}, "
          f"ancillae clean: {pure})")
