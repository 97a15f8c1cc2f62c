"""Four atoms, one cavity mode, one linear cluster.

Compiles the pulse sequence, draws it, runs it and checks the atoms against
the graph-state oracle. The auxiliary atom and the mode end up in a product
state with the chain, which the run report confirms.
"""

import numpy as np

from cavitycluster.cluster import stabilizer_set, verify
from cavitycluster.render import render
from cavitycluster.schedule import compile_schedule, simulate

sched = compile_schedule(1, 4)
print(render(sched))

_, report = simulate(sched)
for label, p in report.factor_fidelities.items():
    print(f"{label:6s} left in its expected state with probability {p:.15f}")

ver = verify(report.main_state, sched.lattice, sched.mapping)
print(f"\nfidelity with the 1x4 cluster: {ver.fidelity:.15f}")
for gen, value in ver.stabilizers:
    print(f"  <{gen}> = {value:+.12f}")
assert len(ver.stabilizers) == len(stabilizer_set(sched.lattice))

# the state written out in the g/e basis
amps = report.main_state.tensor()[1:, 1:, 1:, 1:].reshape(-1)
amps = amps / (amps[0] / abs(amps[0]))  # strip the global phase
for idx in np.flatnonzero(np.abs(amps) > 1e-9):
    bits = format(idx, "04b").replace("0", "g").replace("1", "e")
    print(f"  {amps[idx].real:+.4f} |{bits}>")
