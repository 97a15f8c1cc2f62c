"""Acceptance criteria, one check per criterion at its stated tolerance.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kets import BOX_ATOMS, LINEAR_4, TWO_MODE  # noqa: E402

from cavitycluster import gates, mbqc  # noqa: E402
from cavitycluster.cluster import GE, encode_reference, graph_state, linear_cluster_formula, path, verify  # noqa: E402
from cavitycluster.hilbert import (  # noqa: E402
    LocalUnitary,
    StateVector,
    apply_local_unitary,
    atom,
    basis_state,
    factor_out,
    make_register,
    mode,
)
from cavitycluster.resources import HardwareParams, estimate_chain_length, schedule_cost  # noqa: E402
from cavitycluster.schedule import (  # noqa: E402
    RabiPulse,
    RamseyPulse,
    apply_frame_corrections,
    calibrate,
    compile_schedule,
    simulate,
)

RESULTS: dict[int, tuple[bool, str]] = {}


def crit1():
    res = {n: gates.check_identity(n) for n in gates.IDENTITIES}
    ok = all(r < 1e-12 for r in res.values())
    return ok, "max residual %.2e" % max(res.values())


def crit2():
    sched = compile_schedule(1, 4)
    sched = apply_frame_corrections(sched, calibrate(sched))
    _, rep = simulate(sched)
    fid = abs(np.vdot(LINEAR_4, rep.main_state.amplitudes))
    fac = min(rep.factor_fidelities["As1"], rep.factor_fidelities["C1.M1"])
    return fid >= 1 - 1e-10 and fac >= 1 - 1e-10, f"fidelity {fid:.15f}, factors {fac:.15f}"


def crit3():
    worst_fid, worst_diff = 1.0, 0.0
    for n in range(2, 9):
        sched = compile_schedule(1, n)
        _, rep = simulate(sched)
        ver = verify(rep.main_state, sched.lattice, sched.mapping)
        worst_fid = min(worst_fid, ver.fidelity)
        diff = linear_cluster_formula(n).amplitudes - graph_state(path(n)).amplitudes
        worst_diff = max(worst_diff, float(np.max(np.abs(diff))))
    return worst_fid >= 1 - 1e-10 and worst_diff < 1e-12, f"min fidelity {worst_fid:.15f}, formula diff {worst_diff:.1e}"


def crit4():
    sched = compile_schedule(2, 2)
    _, rep = simulate(sched)
    fid = abs(np.vdot(BOX_ATOMS, rep.main_state.amplitudes))
    modes = min(rep.factor_fidelities["C1.M1"], rep.factor_fidelities["C1.M2"])
    return fid >= 1 - 1e-10 and modes >= 1 - 1e-10, f"fidelity {fid:.15f}, modes {modes:.15f}"


def crit5():
    worst = []
    for m, n in [(2, 3), (2, 4), (3, 2), (3, 3)]:
        sched = compile_schedule(m, n)
        _, rep = simulate(sched)
        ver = verify(rep.main_state, sched.lattice, sched.mapping)
        worst.append((ver.fidelity, ver.min_stabilizer, ver.out_of_subspace))
    f, s, o = min(w[0] for w in worst), min(w[1] for w in worst), max(w[2] for w in worst)
    return f >= 1 - 1e-10 and s >= 1 - 1e-9 and o < 1e-12, f"min fidelity {f:.15f}, min stabilizer {s:.15f}, leak {o:.1e}"


def crit6():
    sched = compile_schedule(2, 2)
    reg = make_register([atom("As1"), mode("C1.M1"), mode("C1.M2")])
    state = basis_state(reg, ("e", "0", "0"))
    for e in sched.events:
        if e.atom != 0:
            continue
        if isinstance(e.kind, RamseyPulse):
            u = LocalUnitary((0,), gates.ramsey(e.kind.phi, e.kind.varphi, e.kind.transition))
        else:
            assert isinstance(e.kind, RabiPulse)
            u = LocalUnitary((0, 1 if e.kind.mode.value == "M1" else 2), gates.rabi(e.kind.theta, e.kind.mode))
        state = apply_local_unitary(state, u)
    modes, p = factor_out(state, 0, [0, 1, 0])
    fid = abs(np.vdot(TWO_MODE, modes.amplitudes))
    return abs(fid - 1) < 1e-12 and abs(p - 1) < 1e-12, f"fidelity {fid:.15f}, aux in g {p:.15f}"


def crit7():
    worst = 0.0
    cases = [(1, n) for n in range(2, 9)] + [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]
    for m, n in cases:
        _, rep = simulate(compile_schedule(m, n), fock_dim=3)
        worst = max(worst, rep.leakage)
    return worst < 1e-12, f"max leakage {worst:.1e} over {len(cases)} runs"


def crit8():
    rng = np.random.default_rng(20240611)
    tv, post = 0.0, 1.0
    for _ in range(200):
        q = rng.normal(size=8) + 1j * rng.normal(size=8)
        full = np.zeros((3, 3, 3), dtype=complex)
        full[1:, 1:, 1:] = q.reshape(2, 2, 2)
        state = StateVector.from_array(make_register([atom(f"A{k}") for k in range(3)]), full.reshape(-1))
        k = int(rng.integers(3))
        for varphi in rng.uniform(-np.pi, 3 * np.pi, size=20):
            a = mbqc.ramsey_distribution(state, k, varphi)
            b = mbqc.phase_distribution(state, k, varphi, GE)
            tv = max(tv, mbqc.total_variation(a, b))
            for ra, rb in zip(a, b):
                if rb.probability > 1e-9:
                    post = min(post, abs(np.vdot(mbqc.undo_applied(ra).amplitudes, rb.post_state.amplitudes)))
    return tv < 1e-12 and post >= 1 - 1e-12, f"max TV {tv:.1e}, min post fidelity {post:.15f}"


def crit9():
    n = estimate_chain_length(HardwareParams(30e-3, 10e-6, 0.2))
    worst = max(schedule_cost(compile_schedule(2, k), main_only=True).max_rabi_angle for k in range(2, 6))
    return n == 100 and worst <= 3 * np.pi + 1e-12, f"estimate {n!r}, max Rabi per atom {worst / np.pi:.3f} pi"


CRITERIA = {1: crit1, 2: crit2, 3: crit3, 4: crit4, 5: crit5, 6: crit6, 7: crit7, 8: crit8, 9: crit9}
NOT_REPRODUCED = {10: "experimental GHZ fidelity reflects hardware noise; ideal evolution only"}


def run(n):
    t0 = time.perf_counter()
    ok, detail = CRITERIA[n]()
    RESULTS[n] = (ok, f"{detail} ({time.perf_counter() - t0:.2f}s)")
    return ok, detail


def summary_lines():
    lines = [f"criterion {n}: {'PASS' if ok else 'FAIL'}  {d}" for n, (ok, d) in sorted(RESULTS.items())]
    lines += [f"criterion {n}: NOT REPRODUCIBLE  {why}" for n, why in NOT_REPRODUCED.items()]
    return lines


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = run(n)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        run(n)
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
