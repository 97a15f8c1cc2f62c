"""Graph and cluster states built straight from their definition.

Nothing in here knows about cavities or pulses: these constructions are
the ground truth that simulated atom chains are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gates import named_gate
from .hilbert import (
    ATOM_LEVELS,
    Kind,
    LocalUnitary,
    Register,
    StateVector,
    apply_local_unitary,
    atom,
    fidelity_up_to_phase,
    make_register,
    qubit,
)

GE = ("g", "e")
AG = ("a", "g")

PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.diag([1, -1]).astype(np.complex128),
}


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; rectangular lattices set ``rows``/``cols``."""

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    rows: int | None = None
    cols: int | None = None

    def __post_init__(self):
        nodes = tuple(int(n) for n in self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("graph nodes must be distinct")
        edges = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if u not in nodes or v not in nodes:
                raise ValueError(f"edge ({u}, {v}) references an unknown node")
            edges.add((min(u, v), max(u, v)))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    def neighbours(self, node: int) -> list[int]:
        return sorted({v for u, v in self.edges if u == node} | {u for u, v in self.edges if v == node})

    @property
    def size(self) -> int:
        return len(self.nodes)


def lattice(rows: int, cols: int) -> Graph:
    """Rectangular rows x cols grid; node (r, c) is numbered (r-1)*cols + c."""
    if rows < 1 or cols < 1:
        raise ValueError(f"lattice needs rows, cols >= 1, got {rows}x{cols}")
    node = lambda r, c: (r - 1) * cols + c  # noqa: E731
    edges = [(node(r, c), node(r, c + 1)) for r in range(1, rows + 1) for c in range(1, cols)]
    edges += [(node(r, c), node(r + 1, c)) for r in range(1, rows) for c in range(1, cols + 1)]
    return Graph(tuple(range(1, rows * cols + 1)), tuple(edges), rows, cols)


def path(n: int) -> Graph:
    return lattice(1, n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least three nodes")
    edges = [(k, k + 1) for k in range(1, n)] + [(1, n)]
    return Graph(tuple(range(1, n + 1)), tuple(edges))


def lattice_node(graph: Graph, row: int, col: int) -> int:
    return (row - 1) * graph.cols + col


def _qubit_register(n: int, prefix: str = "q") -> Register:
    return make_register([qubit(f"{prefix}{k}") for k in range(1, n + 1)])


def plus_state(n: int = 1) -> StateVector:
    return StateVector.from_array(_qubit_register(n), np.ones(2**n))


def graph_state(graph: Graph) -> StateVector:
    """|+>^n followed by a controlled-z on every edge, qubits in ``graph.nodes`` order."""
    if graph.size < 1:
        raise ValueError("graph has no nodes")
    state = plus_state(graph.size)
    cz = named_gate("cz")
    pos = {n: k for k, n in enumerate(graph.nodes)}
    for u, v in graph.edges:
        state = apply_local_unitary(state, LocalUnitary((pos[u], pos[v]), cz))
    return state


def linear_cluster_formula(n: int) -> StateVector:
    """Product form  2^{-n/2} (x)_i (|0_i> + |1_i> Theta_{i+1}),  Theta_{n+1} = 1."""
    if n < 1:
        raise ValueError("need at least one qubit")
    theta = np.diag([1.0, -1.0])
    zero, one = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    # build from the right: the factor for qubit i acts with Theta on qubit i+1
    tail = zero + one
    for _ in range(n - 1):
        rest = len(tail) // 2
        shifted = np.kron(theta, np.eye(rest)) @ tail
        tail = np.kron(zero, tail) + np.kron(one, shifted)
    return StateVector.from_array(_qubit_register(n), tail / 2 ** (n / 2), normalize=False)


def box_from_linear(linear_state: StateVector) -> StateVector:
    """Join the two ends of a four-qubit linear cluster with a controlled-z."""
    if linear_state.register.dims != (2, 2, 2, 2):
        raise ValueError("expected a four-qubit state")
    return apply_local_unitary(linear_state, LocalUnitary((0, 3), named_gate("cz")))


@dataclass(frozen=True)
class ChainMapping:
    """Which lattice node each main-chain atom carries, and in which levels.

    ``assignment[p]`` is the node held by chain position ``p`` (0-based over
    the main-chain atoms); ``encodings[p]`` is the (|0>, |1>) level pair.
    """

    policy: str
    assignment: tuple[int, ...]
    encodings: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(a) for a in self.assignment))
        object.__setattr__(self, "encodings", tuple(tuple(e) for e in self.encodings))
        if len(set(self.assignment)) != len(self.assignment):
            raise ValueError("chain mapping is not injective")
        if len(self.encodings) != len(self.assignment):
            raise ValueError("need exactly one encoding per chain position")
        for enc in self.encodings:
            if enc not in (GE, AG):
                raise ValueError(f"unsupported encoding {enc}")

    def position_of(self, node: int) -> int:
        return self.assignment.index(node)

    def check_against(self, graph: Graph):
        if sorted(self.assignment) != sorted(graph.nodes):
            raise ValueError(
                f"mapping covers nodes {sorted(self.assignment)} but the graph has {list(graph.nodes)}"
            )

    def to_dict(self) -> dict:
        return {
            "policy": self.policy,
            "assignment": list(self.assignment),
            "encodings": ["".join(e) for e in self.encodings],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ChainMapping":
        return cls(d["policy"], tuple(d["assignment"]), tuple(tuple(e) for e in d["encodings"]))


def identity_mapping(graph: Graph, encodings: Sequence[tuple[str, str]] | None = None) -> ChainMapping:
    encs = tuple(encodings) if encodings is not None else (GE,) * graph.size
    return ChainMapping("identity", graph.nodes, encs)


def atom_register(n: int) -> Register:
    return make_register([atom(f"A{k}") for k in range(1, n + 1)])


def _level_slot(enc: tuple[str, str]) -> list[int]:
    return [ATOM_LEVELS.index(enc[0]), ATOM_LEVELS.index(enc[1])]


def encode_reference(graph: Graph, mapping: ChainMapping) -> StateVector:
    """The graph state written into three-level atoms, in chain order."""
    mapping.check_against(graph)
    n = graph.size
    qubits = graph_state(graph).tensor()
    node_axis = {node: k for k, node in enumerate(graph.nodes)}
    # reorder qubit axes so axis p is the node held by chain position p
    qubits = np.transpose(qubits, [node_axis[node] for node in mapping.assignment])
    out = np.zeros((3,) * n, dtype=np.complex128)
    index = np.ix_(*[_level_slot(enc) for enc in mapping.encodings])
    out[index] = qubits
    return StateVector(atom_register(n), out.reshape(-1))


@dataclass(frozen=True)
class PauliString:
    letters: tuple[str, ...]
    sign: int = 1

    def __post_init__(self):
        letters = tuple(self.letters)
        if any(c not in PAULI for c in letters):
            raise ValueError(f"bad Pauli letters {letters}")
        if all(c == "I" for c in letters):
            raise ValueError("a Pauli string needs at least one non-identity letter")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "letters", letters)

    def __str__(self):
        return ("-" if self.sign < 0 else "+") + "".join(self.letters)

    def matrix(self) -> np.ndarray:
        m = np.ones((1, 1), dtype=np.complex128)
        for c in self.letters:
            m = np.kron(m, PAULI[c])
        return self.sign * m


def stabilizer_set(graph: Graph) -> list[PauliString]:
    """Generators K_v = X_v prod_{u ~ v} Z_u, one per node, in node order."""
    pos = {n: k for k, n in enumerate(graph.nodes)}
    out = []
    for node in graph.nodes:
        letters = ["I"] * graph.size
        letters[pos[node]] = "X"
        for u in graph.neighbours(node):
            letters[pos[u]] = "Z"
        out.append(PauliString(tuple(letters)))
    return out


def pauli_expectation(qubits: np.ndarray, pauli: PauliString) -> float:
    """<psi|P|psi> for an n-qubit tensor of shape (2,)*n."""
    psi = np.asarray(qubits, dtype=np.complex128)
    n = psi.ndim
    phi = psi
    for axis, c in enumerate(pauli.letters):
        if c == "I":
            continue
        phi = np.moveaxis(np.tensordot(PAULI[c], phi, axes=([1], [axis])), 0, axis)
    return float(pauli.sign * np.vdot(psi.reshape(-1), phi.reshape(-1)).real) if n else 0.0


@dataclass
class VerificationReport:
    fidelity: float
    stabilizers: list[tuple[str, float]] = field(default_factory=list)
    out_of_subspace: float = 0.0

    @property
    def min_stabilizer(self) -> float:
        return min((v for _, v in self.stabilizers), default=1.0)

    def passed(self, fidelity_tol: float = 1e-10, stabilizer_tol: float = 1e-9, leak_tol: float = 1e-12) -> bool:
        return (
            self.fidelity >= 1 - fidelity_tol
            and self.min_stabilizer >= 1 - stabilizer_tol
            and self.out_of_subspace < leak_tol
        )

    def to_dict(self) -> dict:
        return {
            "fidelity": self.fidelity,
            "stabilizers": [{"generator": g, "expectation": v} for g, v in self.stabilizers],
            "out_of_subspace": self.out_of_subspace,
        }


def encoded_qubits(state: StateVector, mapping: ChainMapping) -> tuple[np.ndarray, float]:
    """Project every atom onto its encoded pair; returns (qubit tensor, population lost)."""
    reg = state.register
    if any(s.kind is not Kind.ATOM for s in reg.subsystems) or len(reg) != len(mapping.assignment):
        raise ValueError(
            f"expected a register of {len(mapping.assignment)} atoms, got {reg.labels}"
        )
    t = state.tensor()
    sub = t[np.ix_(*[_level_slot(enc) for enc in mapping.encodings])]
    kept = float(np.vdot(sub, sub).real)
    return sub, max(0.0, 1.0 - kept)


def verify(simulated: StateVector, graph: Graph, mapping: ChainMapping) -> VerificationReport:
    mapping.check_against(graph)
    reference = encode_reference(graph, mapping)
    if simulated.register.dims != reference.register.dims:
        raise ValueError(
            f"register shape {simulated.register.dims} does not match reference {reference.register.dims}"
        )
    fid = fidelity_up_to_phase(simulated, reference)
    sub, lost = encoded_qubits(simulated, mapping)
    nrm = np.linalg.norm(sub)
    # chain order -> node order so the generators line up
    order = [mapping.position_of(node) for node in graph.nodes]
    qubits = np.transpose(sub, order) / nrm if nrm > 0 else np.transpose(sub, order)
    stabs = [(str(k), pauli_expectation(qubits, k)) for k in stabilizer_set(graph)]
    return VerificationReport(fid, stabs, lost)
