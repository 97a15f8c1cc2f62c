"""Measuring cluster atoms the way the experiment would.

A phase-basis measurement is a pi/2 Ramsey pulse detuned by the measurement
angle followed by state-selective detection. Here the first atom of a
three-atom linear cluster is measured that way and compared with the ideal
projector, then the sign-adaptation rule picks the next angle.
"""

import numpy as np

from cavitycluster import mbqc
from cavitycluster.schedule import compile_schedule, simulate

_, report = simulate(compile_schedule(1, 3))
state = report.main_state

conv = mbqc.ramsey_convention()
print(f"Ramsey offset {conv.offset}, detected g reports outcome {conv.outcome_of_level[0]}")

angle = np.pi / 3
via_ramsey = mbqc.ramsey_distribution(state, 0, angle)
direct = mbqc.phase_distribution(state, 0, angle)
for a, b in zip(via_ramsey, direct):
    print(f"outcome {a.outcome}: Ramsey {a.probability:.6f}  projector {b.probability:.6f}")

log = mbqc.Transcript()
rng = np.random.default_rng(4)
rec = log.add(mbqc.measure_via_ramsey(state, 0, angle, rng))
nxt = log.adapted_angle(np.pi / 4, depends_on=[0])
log.add(mbqc.measure_via_ramsey(rec.post_state, 1, nxt, rng))
print(log.to_dict())
