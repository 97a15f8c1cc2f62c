"""Closed-form unitaries for the cavity-QED primitives and their identities.

Atom levels are ordered ``(a, g, e)``. Within any driven pair the lower
level comes first, so the e-g pair is ``{g, e}`` and the g-a pair is
``{a, g}``. The z rotation ``Z(theta) = exp(-i sigma_z theta / 2)`` takes
sigma_z = +1 on the upper level of the pair; for a cavity mode the upper
level is the one-photon state.

Two-qubit matrices act on ``(atom, cavity)`` in the basis
``{g0, g1, e0, e1}``.
"""

from __future__ import annotations

import enum

import numpy as np

from .hilbert import ATOM_LEVELS


class Transition(str, enum.Enum):
    EG = "EG"
    GA = "GA"

    @property
    def pair(self) -> tuple[int, int]:
        """Indices (lower, upper) of the driven pair in the atomic basis."""
        if self is Transition.EG:
            return ATOM_LEVELS.index("g"), ATOM_LEVELS.index("e")
        return ATOM_LEVELS.index("a"), ATOM_LEVELS.index("g")


class Mode(str, enum.Enum):
    M1 = "M1"
    M2 = "M2"


def _embed_pair(block: np.ndarray, transition: Transition) -> np.ndarray:
    lo, hi = Transition(transition).pair
    u = np.eye(3, dtype=np.complex128)
    idx = np.ix_([lo, hi], [lo, hi])
    u[idx] = block
    return u


def ramsey_block(phi: float, varphi: float) -> np.ndarray:
    c, s = np.cos(phi / 2), np.sin(phi / 2)
    return np.array(
        [[c, -s * np.exp(-1j * varphi)], [s * np.exp(1j * varphi), c]], dtype=np.complex128
    )


def z_block(theta: float) -> np.ndarray:
    return np.diag([np.exp(0.5j * theta), np.exp(-0.5j * theta)])


def ramsey(phi: float, varphi: float = 0.0, transition: Transition | str = Transition.EG) -> np.ndarray:
    """3x3 Ramsey rotation R(phi, varphi) on one atomic transition."""
    return _embed_pair(ramsey_block(phi, varphi), Transition(transition))


def z_rot(theta: float, transition: Transition | str = Transition.EG) -> np.ndarray:
    return _embed_pair(z_block(theta), Transition(transition))


def cavity_z(theta: float) -> np.ndarray:
    """Z(theta) on the {0, 1} Fock pair of a mode, one photon as upper level."""
    return z_block(theta)


def rabi(theta: float, mode: Mode | str = Mode.M1, fock_dim: int = 2) -> np.ndarray:
    """Resonant atom-mode evolution for a Rabi angle ``theta`` (= Omega t).

    Acts on ``atom (x) mode`` and only mixes |e,0> with |g,1>. Mode M1 has
    real off-diagonal amplitudes with the minus sign on the |g,1> -> |e,0>
    branch; mode M2 carries +i on both branches. Every other basis state,
    including the Fock levels above one when ``fock_dim > 2``, is left alone.
    """
    if theta < 0:
        raise ValueError(f"Rabi angle must be non-negative, got {theta}")
    mode = Mode(mode)
    d = int(fock_dim)
    if d < 2:
        raise ValueError("fock_dim must be at least 2")
    ie0 = ATOM_LEVELS.index("e") * d + 0
    ig1 = ATOM_LEVELS.index("g") * d + 1
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    u = np.eye(3 * d, dtype=np.complex128)
    u[ie0, ie0] = c
    u[ig1, ig1] = c
    if mode is Mode.M1:
        u[ig1, ie0] = s
        u[ie0, ig1] = -s
    else:
        u[ig1, ie0] = 1j * s
        u[ie0, ig1] = 1j * s
    return u


def qubit_part(u6: np.ndarray) -> np.ndarray:
    """Restrict an atom-mode operator to the {g, e} x {0, 1} block."""
    g, e = ATOM_LEVELS.index("g"), ATOM_LEVELS.index("e")
    d = u6.shape[0] // 3
    rows = [g * d, g * d + 1, e * d, e * d + 1]
    return u6[np.ix_(rows, rows)]


_NAMED = {
    "swap": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128),
    "cz": np.diag([1, 1, 1, -1]).astype(np.complex128),
    # textbook m-swap form of the M1 pi pulse; it is the transpose of rabi(pi, M1)
    "m_swap": np.array([[1, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128),
    "i_swap": np.array([[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=np.complex128),
}


def named_gate(name: str) -> np.ndarray:
    try:
        return _NAMED[name].copy()
    except KeyError:
        raise ValueError(f"unknown gate {name!r}; choose from {', '.join(_NAMED)}") from None


IDENTITIES = ("rel1", "rel2", "rel3", "rot2", "rot3")


def _residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    return float(np.max(np.abs(lhs - rhs)))


def check_identity(name: str, theta_grid: int = 16) -> float:
    """Max-norm residual of one of the gate identities used by the schemes.

    ``rel1``  m_swap = (-i) swap cz [Z(pi) (x) I]
    ``rel2``  i_swap = i swap cz [Z(7pi/2) (x) Z(7pi/2)]
    ``rel3``  [I (x) Z(t)] i_swap = i_swap [Z(t) (x) I], worst case over a grid of t
    ``rot2``  Z(-pi) = R(pi, 0) R(pi, pi/2)
    ``rot3``  Z(-7pi/2) = R(3pi, 0) R(pi, pi/4)
    """
    swap, cz = named_gate("swap"), named_gate("cz")
    eye2 = np.eye(2)
    if name == "rel1":
        rhs = -1j * swap @ cz @ np.kron(z_block(np.pi), eye2)
        return _residual(named_gate("m_swap"), rhs)
    if name == "rel2":
        zz = np.kron(z_block(3.5 * np.pi), cavity_z(3.5 * np.pi))
        return _residual(named_gate("i_swap"), 1j * swap @ cz @ zz)
    if name == "rel3":
        if theta_grid < 1:
            raise ValueError("theta_grid must be positive")
        isw = named_gate("i_swap")
        worst = 0.0
        for t in np.linspace(-4 * np.pi, 4 * np.pi, theta_grid):
            lhs = np.kron(eye2, cavity_z(t)) @ isw
            rhs = isw @ np.kron(z_block(t), eye2)
            worst = max(worst, _residual(lhs, rhs))
        return worst
    if name == "rot2":
        return _residual(ramsey_block(np.pi, 0) @ ramsey_block(np.pi, np.pi / 2), z_block(-np.pi))
    if name == "rot3":
        return _residual(
            ramsey_block(3 * np.pi, 0) @ ramsey_block(np.pi, np.pi / 4), z_block(-3.5 * np.pi)
        )
    raise ValueError(f"unknown identity {name!r}; choose from {', '.join(IDENTITIES)}")


def z_as_ramsey_pair(theta: float) -> list[tuple[float, float]]:
    """Two resonant-area Ramsey pulses whose product is exactly Z(theta).

    Returned in time order as ``(phi, varphi)`` pairs. Uses
    R(pi, 0) R(pi, theta/2 + pi) or R(3pi, 0) R(pi, theta/2), whichever has
    the smaller detuning phase; both equal Z(theta) without any extra phase.
    """
    two_pi = 2 * np.pi
    short = (theta / 2 + np.pi) % two_pi
    long_ = (theta / 2) % two_pi
    if short <= long_:
        return [(np.pi, short), (np.pi, 0.0)]
    return [(np.pi, long_), (3 * np.pi, 0.0)]
