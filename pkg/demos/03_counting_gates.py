"""
Counting inputs modulo q in a depth that does not depend on n.

The reference construction steps a small counter register once per true
input, ORs "counter is nonzero" onto the target, and steps the counter
back: depth grows with n. Diagonalizing the counter step lets all n
controlled steps commute; fanning the counter out into n entangled copies
lets them fire simultaneously, one copy per input, so the whole gate runs
in a fixed number of layers at the price of n*ceil(log2 q) copy ancillae.
"""
import numpy as np

from qdepth import Discipline, modq_constant_depth, modq_plan
from qdepth.verify import build_construction, depth_scaling_table, verify_built

q = 3
plan = modq_plan(q)
print(f"counter step for q={q} (cycles |0>,|1>,|2>, fixes |3>):")
print(plan.step.real.astype(int))
print("eigenphases:", np.round(plan.phases, 4))

print(f"\nsequential vs constant-depth at q={q}:")
print(depth_scaling_table("modq-seq", q, range(2, 9)).to_text())
print()
print(depth_scaling_table("modq-const", q, range(2, 9)).to_text())

report = verify_built(build_construction("modq-const", n=5, q=q),
                      superpositions=5)
print("\noracle check, n=5:", report.to_text())

print("\nwithout the fanout primitive the copy phases cost log n each:")
print("n      with fanout   strict")
for n in (2, 4, 8, 16):
    wf = modq_constant_depth(n, q).depth
    strict = modq_constant_depth(n, q, Discipline.STRICT).depth
    print(f"{n:<6} {wf:<13} {strict}")
