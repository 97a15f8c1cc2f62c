"""A 3x3 cluster with two cavities.

The first cavity builds rows 1 and 2 while row-3 atoms fly through it
detuned. The second cavity grows row 3 on its own M2 mode and joins it to
row 2 with 2pi pulses. Eleven atoms and three modes: about 1.4 million
amplitudes, a few seconds of dense simulation.
"""

import time

from cavitycluster.cluster import verify
from cavitycluster.resources import HardwareParams, estimate_chain_length, schedule_cost
from cavitycluster.schedule import compile_schedule, simulate

sched = compile_schedule(3, 3)
print(f"{len(sched.events)} events over {sched.apparatus.cavity_count} cavities, "
      f"{len(sched.auxiliary)} auxiliary atoms")

t0 = time.perf_counter()
_, report = simulate(sched)
ver = verify(report.main_state, sched.lattice, sched.mapping)
print(f"fidelity {ver.fidelity:.15f}, worst stabilizer {ver.min_stabilizer:.15f} "
      f"({time.perf_counter() - t0:.1f}s)")

cost = schedule_cost(sched)
print(f"worst per-atom Rabi angle: {cost.max_rabi_angle / 3.141592653589793:.1f} pi, "
      f"Rabi time {cost.wall_time * 1e6:.0f} us")

p = HardwareParams()
print(f"atoms that fit in a {p.lifetime * 1e3:.0f} ms lifetime: about {estimate_chain_length(p):.0f}")
