"""Single-atom projective measurements on a simulated chain.

Outcome ``0`` is the lower encoded level in the computational basis and
``(|0> + e^{i phi}|1>)/sqrt(2)`` in the phase basis; outcome ``1`` is the
upper level and ``(|0> - e^{i phi}|1>)/sqrt(2)``. Every measurement has a
distribution form (both branches, no randomness) and a sampled form that
draws from a seedable generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import gates
from .cluster import GE
from .hilbert import ATOM_LEVELS, Kind, LocalUnitary, StateVector, apply_local_unitary

LEAK_TOL = 1e-9


class MeasurementError(ValueError):
    pass


@dataclass(frozen=True)
class Basis:
    kind: str  # "computational" or "phase"
    varphi: float | None = None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "varphi": self.varphi}


COMPUTATIONAL = Basis("computational")


def phase_basis(varphi: float) -> Basis:
    return Basis("phase", float(varphi))


@dataclass
class MeasurementRecord:
    atom: int
    basis: Basis
    outcome: int
    probability: float
    post_state: StateVector | None = field(repr=False, default=None)
    # local unitary applied before detection, if any (3x3 on the atom)
    applied: np.ndarray | None = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "atom": self.atom,
            "basis": self.basis.to_dict(),
            "outcome": self.outcome,
            "probability": self.probability,
        }


def _pair(encoding) -> tuple[int, int]:
    lo, hi = encoding
    return ATOM_LEVELS.index(lo), ATOM_LEVELS.index(hi)


def _projectors(basis: Basis, encoding) -> list[np.ndarray]:
    lo, hi = _pair(encoding)
    vecs = []
    if basis.kind == "computational":
        vecs = [np.eye(3)[lo], np.eye(3)[hi]]
    elif basis.kind == "phase":
        w = np.exp(1j * basis.varphi)
        for sign in (1, -1):
            v = np.zeros(3, dtype=np.complex128)
            v[lo], v[hi] = 1 / np.sqrt(2), sign * w / np.sqrt(2)
            vecs.append(v)
    else:
        raise ValueError(f"unknown basis {basis.kind!r}")
    return [np.outer(v, v.conj()) for v in vecs]


def _check_atom(state: StateVector, atom: int, encoding):
    reg = state.register
    if not 0 <= atom < len(reg):
        raise IndexError(f"atom {atom} outside register of {len(reg)}")
    if reg[atom].kind is not Kind.ATOM:
        raise MeasurementError(f"subsystem {reg[atom].label!r} is not an atom")
    keep = set(_pair(encoding))
    probs = np.moveaxis(state.probabilities().reshape(reg.dims), atom, 0).reshape(3, -1).sum(axis=1)
    lost = float(sum(p for k, p in enumerate(probs) if k not in keep))
    if lost >= LEAK_TOL:
        raise MeasurementError(f"atom {reg[atom].label!r} has population {lost:.3e} outside its encoded levels")


def _branches(state: StateVector, atom: int, basis: Basis, encoding) -> list[MeasurementRecord]:
    _check_atom(state, atom, encoding)
    out = []
    for outcome, proj in enumerate(_projectors(basis, encoding)):
        projected = apply_local_unitary_unchecked(state, atom, proj)
        p = float(np.vdot(projected, projected).real)
        post = StateVector(state.register, projected / np.sqrt(p)) if p > 1e-15 else None
        out.append(MeasurementRecord(atom, basis, outcome, p, post))
    return out


def apply_local_unitary_unchecked(state: StateVector, atom: int, op: np.ndarray) -> np.ndarray:
    """Apply any 3x3 operator (projectors included) to one atom; returns raw amplitudes."""
    psi = np.moveaxis(state.tensor(), atom, 0)
    out = np.tensordot(op, psi, axes=([1], [0]))
    return np.moveaxis(out, 0, atom).reshape(-1)


def _sample(records: list[MeasurementRecord], rng) -> MeasurementRecord:
    rng = np.random.default_rng(rng)
    p = np.array([r.probability for r in records])
    return records[int(rng.choice(len(records), p=p / p.sum()))]


def computational_distribution(state: StateVector, atom: int, encoding=GE) -> list[MeasurementRecord]:
    return _branches(state, atom, COMPUTATIONAL, tuple(encoding))


def measure_computational(state: StateVector, atom: int, encoding=GE, rng=None) -> MeasurementRecord:
    return _sample(computational_distribution(state, atom, encoding), rng)


def phase_distribution(state: StateVector, atom: int, varphi: float, encoding=GE) -> list[MeasurementRecord]:
    return _branches(state, atom, phase_basis(varphi), tuple(encoding))


def measure_phase(state: StateVector, atom: int, varphi: float, encoding=GE, rng=None) -> MeasurementRecord:
    return _sample(phase_distribution(state, atom, varphi, encoding), rng)


@dataclass(frozen=True)
class RamseyConvention:
    """Detuning offset and outcome relabelling that turn Ramsey + detection into a phase measurement."""

    offset: float
    outcome_of_level: tuple[int, int]  # outcome reported for (g, e)


@lru_cache(maxsize=1)
def ramsey_convention() -> RamseyConvention:
    """Found by trying candidate offsets and labellings against the direct projectors."""
    probe_rng = np.random.default_rng(12345)
    probes = [probe_rng.normal(size=2) + 1j * probe_rng.normal(size=2) for _ in range(6)]
    probes = [v / np.linalg.norm(v) for v in probes]
    angles = probe_rng.uniform(0, 2 * np.pi, size=6)
    for offset in np.arange(4) * np.pi / 2:
        for labels in ((0, 1), (1, 0)):
            worst = 0.0
            for v, phi in zip(probes, angles):
                r = gates.ramsey_block(np.pi / 2, phi + offset) @ v
                p_lvl = np.abs(r) ** 2
                p_ramsey = [p_lvl[labels.index(k)] for k in (0, 1)]
                w = np.exp(1j * phi)
                p_direct = [abs(np.vdot(np.array([1, s * w]) / np.sqrt(2), v)) ** 2 for s in (1, -1)]
                worst = max(worst, max(abs(a - b) for a, b in zip(p_ramsey, p_direct)))
            if worst < 1e-12:
                return RamseyConvention(float(offset), labels)
    raise RuntimeError("no Ramsey offset reproduces the phase-basis projectors")


def ramsey_distribution(state: StateVector, atom: int, varphi: float) -> list[MeasurementRecord]:
    """pi/2 Ramsey pulse detuned by ``varphi`` (plus the calibrated offset), then g/e detection."""
    conv = ramsey_convention()
    _check_atom(state, atom, GE)
    u = gates.ramsey(np.pi / 2, varphi + conv.offset)
    rotated = apply_local_unitary(state, LocalUnitary((atom,), u))
    by_level = computational_distribution(rotated, atom, GE)
    out = []
    for outcome in (0, 1):
        lvl = by_level[conv.outcome_of_level.index(outcome)]
        out.append(MeasurementRecord(atom, phase_basis(varphi), outcome, lvl.probability, lvl.post_state, u))
    return out


def measure_via_ramsey(state: StateVector, atom: int, varphi: float, rng=None) -> MeasurementRecord:
    return _sample(ramsey_distribution(state, atom, varphi), rng)


def undo_applied(record: MeasurementRecord) -> StateVector:
    """Post-measurement state with the pre-detection pulse rotated back out."""
    if record.post_state is None:
        raise ValueError("branch has zero probability")
    if record.applied is None:
        return record.post_state
    return apply_local_unitary(record.post_state, LocalUnitary((record.atom,), record.applied).inverse())


def total_variation(a: Sequence[MeasurementRecord], b: Sequence[MeasurementRecord]) -> float:
    return 0.5 * sum(abs(x.probability - y.probability) for x, y in zip(a, b))


@dataclass
class Transcript:
    """Ordered measurement log with the usual sign-adaptation rule for later angles."""

    records: list[MeasurementRecord] = field(default_factory=list)

    def add(self, record: MeasurementRecord) -> MeasurementRecord:
        self.records.append(record)
        return record

    def outcome(self, atom: int) -> int:
        for r in reversed(self.records):
            if r.atom == atom:
                return r.outcome
        raise KeyError(f"atom {atom} has not been measured")

    def adapted_angle(self, varphi: float, depends_on: Sequence[int] = ()) -> float:
        """``(-1)^(sum of earlier outcomes) * varphi``."""
        parity = sum(self.outcome(a) for a in depends_on) % 2
        return -varphi if parity else varphi

    def to_dict(self) -> dict:
        return {"measurements": [r.to_dict() for r in self.records]}
