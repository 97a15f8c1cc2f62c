"""Dense state vectors over mixed-dimension registers.

A register is an ordered list of subsystems (three-level atoms, truncated
cavity modes, plain qubits). Composite indices are big-endian: the first
subsystem varies slowest, so ``reshape(register.dims)`` yields a tensor
whose axis ``k`` belongs to subsystem ``k``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

NORM_TOL = 1e-12
UNITARY_TOL = 1e-12

ATOM_LEVELS = ("a", "g", "e")


class Kind(str, enum.Enum):
    ATOM = "atom"
    MODE = "mode"
    QUBIT = "qubit"


@dataclass(frozen=True)
class SubsystemSpec:
    kind: Kind
    label: str
    dimension: int = 0

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        dim = self.dimension
        if kind is Kind.ATOM:
            if dim not in (0, 3):
                raise ValueError(f"atom {self.label!r} must have dimension 3, got {dim}")
            dim = 3
        elif kind is Kind.MODE:
            dim = dim or 2
            if dim < 2:
                raise ValueError(f"mode {self.label!r} needs Fock truncation >= 2, got {dim}")
        else:
            if dim not in (0, 2):
                raise ValueError(f"qubit {self.label!r} must have dimension 2, got {dim}")
            dim = 2
        object.__setattr__(self, "dimension", dim)

    @property
    def levels(self) -> tuple[str, ...]:
        if self.kind is Kind.ATOM:
            return ATOM_LEVELS
        return tuple(str(n) for n in range(self.dimension))

    def level_index(self, level: str) -> int:
        try:
            return self.levels.index(str(level))
        except ValueError:
            raise ValueError(
                f"level {level!r} is not valid for {self.kind.value} {self.label!r}"
                f" (allowed: {', '.join(self.levels)})"
            ) from None


def atom(label: str) -> SubsystemSpec:
    return SubsystemSpec(Kind.ATOM, label)


def mode(label: str, fock_dim: int = 2) -> SubsystemSpec:
    return SubsystemSpec(Kind.MODE, label, fock_dim)


def qubit(label: str) -> SubsystemSpec:
    return SubsystemSpec(Kind.QUBIT, label)


@dataclass(frozen=True)
class Register:
    subsystems: tuple[SubsystemSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "subsystems", tuple(self.subsystems))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dimension for s in self.subsystems)

    @property
    def total_dimension(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.subsystems)

    def __len__(self):
        return len(self.subsystems)

    def __getitem__(self, index: int) -> SubsystemSpec:
        return self.subsystems[index]

    def index(self, label: str) -> int:
        """Position of the subsystem called ``label``."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no subsystem labelled {label!r}") from None

    def composite_index(self, levels: Sequence[str]) -> int:
        if len(levels) != len(self.subsystems):
            raise ValueError(f"expected {len(self.subsystems)} level labels, got {len(levels)}")
        digits = [s.level_index(lv) for s, lv in zip(self.subsystems, levels)]
        return int(np.ravel_multi_index(digits, self.dims))

    def level_labels(self, index: int) -> tuple[str, ...]:
        digits = np.unravel_index(index, self.dims)
        return tuple(s.levels[int(d)] for s, d in zip(self.subsystems, digits))

    def without(self, position: int) -> "Register":
        return Register(self.subsystems[:position] + self.subsystems[position + 1:])


def make_register(specs: Sequence[SubsystemSpec]) -> Register:
    specs = list(specs)
    if not specs:
        raise ValueError("a register needs at least one subsystem")
    labels = [s.label for s in specs]
    dupes = sorted({lb for lb in labels if labels.count(lb) > 1})
    if dupes:
        raise ValueError(f"duplicate subsystem labels: {', '.join(dupes)}")
    return Register(tuple(specs))


@dataclass(frozen=True, eq=False)
class StateVector:
    register: Register
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.register.total_dimension:
            raise ValueError(
                f"amplitude length {amps.size} does not match register dimension "
                f"{self.register.total_dimension}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_array(cls, register: Register, amplitudes, normalize: bool = True) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if normalize:
            nrm = np.linalg.norm(amps)
            if nrm == 0:
                raise ValueError("cannot normalise the zero vector")
            amps = amps / nrm
        return cls(register, amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.register.dims)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def basis_state(register: Register, levels: Sequence[str]) -> StateVector:
    amps = np.zeros(register.total_dimension, dtype=np.complex128)
    amps[register.composite_index(levels)] = 1.0
    return StateVector(register, amps)


def product_state(register: Register, factors: Sequence[np.ndarray]) -> StateVector:
    """Tensor product of single-subsystem vectors, one per subsystem."""
    if len(factors) != len(register):
        raise ValueError(f"expected {len(register)} factors, got {len(factors)}")
    amps = np.ones(1, dtype=np.complex128)
    for spec, vec in zip(register.subsystems, factors):
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (spec.dimension,):
            raise ValueError(f"factor for {spec.label!r} must have shape ({spec.dimension},)")
        amps = np.kron(amps, vec)
    return StateVector.from_array(register, amps)


def unitarity_error(matrix: np.ndarray) -> float:
    m = np.asarray(matrix)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


@dataclass(frozen=True, eq=False)
class LocalUnitary:
    targets: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"unitary must be square, got shape {m.shape}")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"repeated target in {self.targets}")
        err = unitarity_error(m)
        if err > UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (max |U^dag U - I| = {err:.3e})")
        object.__setattr__(self, "matrix", m)

    def inverse(self) -> "LocalUnitary":
        return LocalUnitary(self.targets, self.matrix.conj().T)


def apply_local_unitary(state: StateVector, u: LocalUnitary) -> StateVector:
    reg = state.register
    dims = reg.dims
    for t in u.targets:
        if not 0 <= t < len(dims):
            raise IndexError(f"target {t} outside register of {len(dims)} subsystems")
    tdims = [dims[t] for t in u.targets]
    k = len(tdims)
    if u.matrix.shape[0] != int(np.prod(tdims)):
        raise ValueError(
            f"matrix dimension {u.matrix.shape[0]} does not match target dimensions {tdims}"
        )
    op = u.matrix.reshape(tdims + tdims)
    psi = state.amplitudes.reshape(dims)
    out = np.tensordot(op, psi, axes=(list(range(k, 2 * k)), list(u.targets)))
    # tensordot puts the target axes first; restore register order
    out = np.moveaxis(out, list(range(k)), list(u.targets))
    return StateVector(reg, out.reshape(-1))


def overlap(s1: StateVector, s2: StateVector) -> complex:
    """Inner product <s1|s2>."""
    if s1.register.dims != s2.register.dims:
        raise ValueError(f"register shapes differ: {s1.register.dims} vs {s2.register.dims}")
    return complex(np.vdot(s1.amplitudes, s2.amplitudes))


def fidelity_up_to_phase(s1: StateVector, s2: StateVector) -> float:
    return min(1.0, abs(overlap(s1, s2)))


def factor_out(state: StateVector, subsystem: int, reference) -> tuple[StateVector, float]:
    """Project ``subsystem`` onto ``reference`` and drop it from the register.

    Returns the renormalised remainder and the projection probability. A
    probability of one means the state was exactly a product with
    ``reference`` on that subsystem.
    """
    reg = state.register
    if not 0 <= subsystem < len(reg):
        raise IndexError(f"subsystem {subsystem} outside register of {len(reg)}")
    ref = np.asarray(reference, dtype=np.complex128).reshape(-1)
    if ref.shape != (reg.dims[subsystem],):
        raise ValueError(f"reference must have length {reg.dims[subsystem]}")
    if abs(np.linalg.norm(ref) - 1.0) > 1e-9:
        raise ValueError("reference state is not normalised")
    rest = np.tensordot(ref.conj(), state.tensor(), axes=([0], [subsystem]))
    prob = float(np.vdot(rest, rest).real)
    if prob < 1e-12:
        raise ValueError(
            f"projection of {reg[subsystem].label!r} onto the reference has probability "
            f"{prob:.3e}; the subsystem is not in that state"
        )
    remaining = reg.without(subsystem)
    if len(remaining) == 0:
        raise ValueError("cannot factor the last subsystem out of a register")
    return StateVector(remaining, rest.reshape(-1) / np.sqrt(prob)), prob


def level_vector(spec: SubsystemSpec, level: str) -> np.ndarray:
    vec = np.zeros(spec.dimension, dtype=np.complex128)
    vec[spec.level_index(level)] = 1.0
    return vec


def leakage_check(state: StateVector, truncation: int | None = None) -> float:
    """Total probability on Fock levels n >= 2 of any cavity mode."""
    reg = state.register
    probs = state.probabilities().reshape(reg.dims)
    inside = np.ones(reg.dims, dtype=bool)
    for axis, spec in enumerate(reg.subsystems):
        if spec.kind is not Kind.MODE:
            continue
        if truncation is not None and spec.dimension != truncation:
            raise ValueError(
                f"mode {spec.label!r} has Fock dimension {spec.dimension}, expected {truncation}"
            )
        shape = [1] * len(reg.dims)
        shape[axis] = spec.dimension
        inside &= (np.arange(spec.dimension) < 2).reshape(shape)
    return float(probs[~inside].sum())
