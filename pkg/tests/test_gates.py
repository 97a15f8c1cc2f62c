import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavitycluster import gates
from cavitycluster.gates import Mode, Transition
from cavitycluster.hilbert import unitarity_error

angles = st.floats(0, 8 * np.pi, allow_nan=False)
signed = st.floats(-8 * np.pi, 8 * np.pi, allow_nan=False)

# (atom, mode) basis with atom levels a, g, e and fock 0, 1
E0, G1, G0, E1, A1 = 4, 3, 2, 5, 1


def col(u, k):
    return u[:, k]


def test_m2_pi_on_e0():
    u = gates.rabi(np.pi, Mode.M2)
    assert np.allclose(col(u, E0), 1j * np.eye(6)[G1])


def test_m2_two_pi_on_g1():
    u = gates.rabi(2 * np.pi, Mode.M2)
    assert np.allclose(col(u, G1), -np.eye(6)[G1])


def test_m1_zero_is_identity():
    assert np.array_equal(gates.rabi(0.0, Mode.M1), np.eye(6))


def test_m1_pi_on_e0():
    u = gates.rabi(np.pi, Mode.M1)
    assert np.allclose(col(u, E0), np.eye(6)[G1])
    assert np.allclose(col(u, G1), -np.eye(6)[E0])


@pytest.mark.parametrize("m", list(Mode))
def test_rabi_leaves_spectators(m):
    u = gates.rabi(1.234, m)
    for k in (0, A1, G0, E1):
        assert np.allclose(col(u, k), np.eye(6)[k])


def test_rabi_rejects_negative_angle():
    with pytest.raises(ValueError):
        gates.rabi(-0.1)


@settings(max_examples=60, deadline=None)
@given(angles, angles, st.sampled_from(list(Mode)), st.sampled_from([2, 3]))
def test_rabi_group_property(t1, t2, m, d):
    lhs = gates.rabi(t1, m, d) @ gates.rabi(t2, m, d)
    assert np.max(np.abs(lhs - gates.rabi(t1 + t2, m, d))) < 1e-12
    assert unitarity_error(gates.rabi(t1, m, d)) < 1e-12


@pytest.mark.parametrize("m", list(Mode))
def test_two_pi_is_minus_one_on_block(m):
    expect = np.eye(6)
    expect[E0, E0] = expect[G1, G1] = -1
    assert np.max(np.abs(gates.rabi(2 * np.pi, m) - expect)) < 1e-15


def test_truncation_three_only_touches_qubit_block():
    u = gates.rabi(np.pi, Mode.M1, fock_dim=3)
    # |e,1> stays put: no ladder coupling to |g,2>
    e1 = 2 * 3 + 1
    assert np.allclose(u[:, e1], np.eye(9)[e1])


def test_prep_pulse():
    out = gates.ramsey(np.pi / 2, np.pi) @ np.array([0, 0, 1])
    assert np.allclose(out, [0, 1 / np.sqrt(2), 1 / np.sqrt(2)])


@settings(max_examples=40, deadline=None)
@given(signed, st.sampled_from(list(Transition)))
def test_ramsey_zero_area_is_identity(varphi, t):
    assert np.allclose(gates.ramsey(0.0, varphi, t), np.eye(3))


def test_ramsey_pi_flips_g_to_e():
    out = gates.ramsey(np.pi, 0.0) @ np.array([0, 1, 0])
    assert np.allclose(out, [0, 0, 1])


def test_ga_ramsey_fixes_e():
    u = gates.ramsey(0.9, 0.4, Transition.GA)
    assert np.allclose(u[:, 2], [0, 0, 1])
    assert np.allclose(u[2, :], [0, 0, 1])


@settings(max_examples=60, deadline=None)
@given(signed, signed, st.sampled_from(list(Transition)))
def test_ramsey_inverse(phi, varphi, t):
    u = gates.ramsey(phi, varphi, t) @ gates.ramsey(-phi, varphi, t)
    assert np.max(np.abs(u - np.eye(3))) < 1e-12


def test_z_rot_conventions():
    assert np.allclose(gates.z_rot(0.0), np.eye(3))
    assert np.allclose(gates.z_rot(-np.pi)[1:, 1:], np.diag([-1j, 1j]))
    z4 = gates.z_rot(4 * np.pi)
    assert np.allclose(z4, np.eye(3))
    ga = gates.z_rot(0.5, Transition.GA)
    assert np.isclose(ga[1, 1], np.exp(-0.25j)) and ga[2, 2] == 1


def test_named_gates():
    cz, msw, isw = gates.named_gate("cz"), gates.named_gate("m_swap"), gates.named_gate("i_swap")
    basis = np.eye(4)
    assert np.allclose(cz @ basis[3], -basis[3])
    assert np.allclose(msw @ basis[1], basis[2])
    assert np.allclose(isw @ basis[1], 1j * basis[2])
    with pytest.raises(ValueError, match="unknown gate"):
        gates.named_gate("cnot")


def test_pi_pulses_in_qubit_block():
    # the Hamiltonian M1 pi pulse is the transpose of the m-swap gate
    assert np.allclose(gates.qubit_part(gates.rabi(np.pi, Mode.M1)), gates.named_gate("m_swap").T)
    assert np.allclose(gates.qubit_part(gates.rabi(np.pi, Mode.M2)), gates.named_gate("i_swap"))


def test_m1_pi_pulse_is_swap_cz_up_to_local_z():
    swap, cz = gates.named_gate("swap"), gates.named_gate("cz")
    zi = np.kron(gates.z_block(np.pi), np.eye(2))
    assert np.allclose(gates.qubit_part(gates.rabi(np.pi, Mode.M1)), -1j * zi @ swap @ cz)


@pytest.mark.parametrize("name", gates.IDENTITIES)
def test_identity_residuals(name):
    assert gates.check_identity(name) < 1e-12


def test_rel3_grid_is_used():
    assert gates.check_identity("rel3", theta_grid=32) < 1e-12
    with pytest.raises(ValueError):
        gates.check_identity("rel3", theta_grid=0)
    with pytest.raises(ValueError):
        gates.check_identity("rel9")


@settings(max_examples=100, deadline=None)
@given(signed)
def test_z_as_ramsey_pair_is_exact(theta):
    u = np.eye(2)
    for phi, varphi in gates.z_as_ramsey_pair(theta):
        u = gates.ramsey_block(phi, varphi) @ u
    assert np.max(np.abs(u - gates.z_block(theta))) < 1e-12


def test_z_pairs_for_common_corrections():
    assert gates.z_as_ramsey_pair(-np.pi) == [(np.pi, np.pi / 2), (np.pi, 0.0)]
    (p1, v1), (p2, v2) = gates.z_as_ramsey_pair(-3.5 * np.pi)
    assert (p1, p2, v2) == (np.pi, 3 * np.pi, 0.0) and v1 == pytest.approx(np.pi / 4)
