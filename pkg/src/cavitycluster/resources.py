"""Chain-length estimate and pulse census for compiled schedules."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .schedule import DetunedPass, RabiPulse, RamseyPulse, Schedule


@dataclass(frozen=True)
class HardwareParams:
    """Atom-cavity lifetime, pi-pulse time (seconds), correction factor, atom speed (m/s)."""

    lifetime: float = 30e-3
    pi_pulse: float = 10e-6
    epsilon: float = 0.2
    velocity: float = 500.0

    def __post_init__(self):
        for name in ("lifetime", "pi_pulse", "epsilon", "velocity"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.epsilon > 1:
            raise ValueError(f"epsilon must be <= 1, got {self.epsilon}")


def _exact(x: float) -> Fraction:
    # the shortest decimal that round-trips, so 10e-6 is read as 1/100000
    return Fraction(repr(float(x)))


def estimate_chain_length(p: HardwareParams | None = None) -> float:
    """Atoms that fit in one coherence time: (T / T_pi) * epsilon / 6.

    Evaluated in exact rational arithmetic on the decimal inputs; callers
    floor the result if they want an integer.
    """
    p = p or HardwareParams()
    return float(_exact(p.lifetime) / _exact(p.pi_pulse) * _exact(p.epsilon) / 6)


@dataclass
class CostReport:
    rabi_angle: dict[str, float] = field(default_factory=dict)
    pulse_counts: dict[str, int] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def total_rabi_angle(self) -> float:
        return float(sum(self.rabi_angle.values()))

    @property
    def max_rabi_angle(self) -> float:
        return max(self.rabi_angle.values(), default=0.0)

    def to_dict(self) -> dict:
        return {
            "rabi_angle_per_atom": self.rabi_angle,
            "rabi_angle_in_pi": {k: v / np.pi for k, v in self.rabi_angle.items()},
            "pulse_counts": self.pulse_counts,
            "total_rabi_angle": self.total_rabi_angle,
            "max_rabi_angle": self.max_rabi_angle,
            "wall_time": self.wall_time,
        }


def schedule_cost(schedule: Schedule, p: HardwareParams | None = None, main_only: bool = False) -> CostReport:
    """Per-atom Rabi angle, pulse counts by kind, and Rabi-only wall time."""
    p = p or HardwareParams()
    angles: dict[str, float] = {}
    counts: Counter = Counter()
    keep = set(schedule.main_atoms) if main_only else set(range(schedule.chain_length))
    for e in schedule.events:
        if e.atom not in keep:
            continue
        label = schedule.atom_label(e.atom)
        if isinstance(e.kind, RabiPulse):
            angles[label] = angles.get(label, 0.0) + e.kind.theta
            counts["rabi"] += 1
        elif isinstance(e.kind, RamseyPulse):
            counts[f"ramsey_{e.kind.transition.value.lower()}"] += 1
        elif isinstance(e.kind, DetunedPass):
            counts["detuned"] += 1
    total = sum(angles.values())
    return CostReport(angles, dict(counts), total / np.pi * p.pi_pulse)
