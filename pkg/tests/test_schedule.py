import json

import numpy as np
import pytest

from cavitycluster.cluster import AG, GE, encode_reference, verify
from cavitycluster.gates import Mode, Transition
from cavitycluster.hilbert import fidelity_up_to_phase
from cavitycluster.schedule import (
    Apparatus,
    CalibrationError,
    DetunedPass,
    PulseEvent,
    RabiPulse,
    RamseyPulse,
    ScheduleError,
    apply_frame_corrections,
    calibrate,
    chain_layout,
    compile_schedule,
    dumps,
    empty_schedule,
    initial_state,
    loads,
    chain_register,
    simulate,
    validate,
)
from kets import BOX_ATOMS, LINEAR_4

GRID = [(1, n) for n in range(2, 9)] + [(2, n) for n in range(2, 5)] + [(3, 2), (3, 3), (4, 2)]


def fidelity_of(sched, fock_dim=2):
    _, rep = simulate(sched, fock_dim)
    return verify(rep.main_state, sched.lattice, sched.mapping), rep


@pytest.mark.parametrize("m, n", GRID)
def test_compiled_schedules_hit_the_cluster(m, n):
    sched = compile_schedule(m, n)
    assert validate(sched) == []
    ver, rep = fidelity_of(sched)
    assert ver.fidelity >= 1 - 1e-10
    assert ver.min_stabilizer >= 1 - 1e-9
    assert ver.out_of_subspace < 1e-12
    assert rep.min_factor_fidelity >= 1 - 1e-10


def test_linear_four_against_typed_ket():
    _, rep = simulate(compile_schedule(1, 4))
    assert abs(np.vdot(LINEAR_4, rep.main_state.amplitudes)) >= 1 - 1e-10
    assert set(rep.factor_fidelities) == {"As1", "C1.M1"}


def test_box_against_typed_ket():
    sched = compile_schedule(2, 2)
    assert sched.mapping.encodings == (GE, GE, AG, GE)
    _, rep = simulate(sched)
    assert abs(np.vdot(BOX_ATOMS, rep.main_state.amplitudes)) >= 1 - 1e-10
    assert dict(sched.mode_targets) == {"C1.M1": 1, "C1.M2": 1}


def test_two_node_path():
    sched = compile_schedule(1, 2)
    ver, _ = fidelity_of(sched)
    assert ver.passed()


@pytest.mark.parametrize("m, n", [(1, 4), (2, 3), (3, 2)])
def test_no_leakage_at_truncation_three(m, n):
    ver, rep = fidelity_of(compile_schedule(m, n), fock_dim=3)
    assert rep.leakage < 1e-12
    assert ver.fidelity >= 1 - 1e-10


def test_linear_structure():
    sched = compile_schedule(1, 4)
    aux, last = 0, sched.main_atoms[-1]
    kinds = [(e.zone, type(e.kind).__name__) for e in sched.events if e.atom == aux]
    assert kinds == [("R1", "RamseyPulse"), ("C1", "RabiPulse")]
    last_events = [e for e in sched.events if e.atom == last]
    assert len(last_events) == 1 and last_events[0].kind == RabiPulse(Mode.M1, np.pi)
    for a in sched.main_atoms[:-1]:
        mine = [e for e in sched.events if e.atom == a]
        assert [e.zone for e in mine] == ["R1", "C1", "R2", "R2"]


def test_two_row_uses_ga_transfer_and_budget():
    sched = compile_schedule(2, 4)
    ga = [e for e in sched.events if isinstance(e.kind, RamseyPulse) and e.kind.transition is Transition.GA]
    assert ga and all(e.zone.startswith("R") for e in ga)
    per_atom = {}
    for e in sched.events:
        if isinstance(e.kind, RabiPulse) and e.atom in sched.main_atoms:
            per_atom[e.atom] = per_atom.get(e.atom, 0) + e.kind.theta
    assert max(per_atom.values()) <= 3 * np.pi + 1e-12
    assert sum(per_atom.values()) / len(per_atom) <= 3 * np.pi


def test_box_auxiliary_sequence():
    sched = compile_schedule(2, 2)
    aux = [e for e in sched.events if e.atom == 0]
    assert [type(e.kind).__name__ for e in aux] == ["RabiPulse", "RamseyPulse", "RabiPulse"]
    assert aux[0].kind == RabiPulse(Mode.M1, np.pi / 2)
    assert aux[1].zone == "Rc1"
    assert aux[2].kind == RabiPulse(Mode.M2, np.pi)


def test_three_rows_uses_two_cavities():
    sched = compile_schedule(3, 3)
    assert sched.apparatus.cavity_count == 2
    assert len(sched.auxiliary) == 2
    # row-3 atoms sit out the first cavity
    row3 = [a for a, (r, _) in zip(sched.main_atoms, chain_layout(3, 3)) if r == 3]
    for a in row3:
        c1 = [e for e in sched.events if e.atom == a and e.zone == "C1"]
        assert c1 and all(isinstance(e.kind, DetunedPass) for e in c1)


def test_larger_apparatus_is_fine():
    sched = compile_schedule(2, 2, Apparatus(cavity_count=3))
    assert validate(sched) == []
    ver, _ = fidelity_of(sched)
    assert ver.passed()


@pytest.mark.parametrize("m, n", [(0, 4), (1, 1), (2, 0)])
def test_compile_preconditions(m, n):
    with pytest.raises(ScheduleError):
        compile_schedule(m, n)


def test_too_few_cavities():
    with pytest.raises(ScheduleError, match="cavities"):
        compile_schedule(3, 2, Apparatus(cavity_count=1))


def test_compile_is_deterministic():
    assert dumps(compile_schedule(3, 3)) == dumps(compile_schedule(3, 3))


@pytest.mark.parametrize("m, n", [(1, 4), (2, 3), (3, 2)])
def test_json_round_trip(m, n):
    sched = compile_schedule(m, n)
    again = loads(dumps(sched))
    assert again == sched
    assert dumps(again) == dumps(sched)


def test_json_errors():
    with pytest.raises(ValueError):
        loads("{not json")
    with pytest.raises(ValueError):
        loads("[]")
    doc = json.loads(dumps(compile_schedule(1, 2)))
    del doc["events"][0]["zone"]
    with pytest.raises(ValueError, match="malformed"):
        loads(json.dumps(doc))
    doc = json.loads(dumps(compile_schedule(1, 2)))
    doc["events"][0]["kind"] = "laser"
    with pytest.raises(ValueError, match="unknown event kind"):
        loads(json.dumps(doc))


def _with_events(sched, events):
    from dataclasses import replace

    return replace(sched, events=tuple(replace(e, ordinal=k) for k, e in enumerate(events)))


def test_interleaved_rabi_flagged():
    sched = compile_schedule(1, 3)
    a1, a2 = sched.main_atoms[:2]
    # A1 keeps no pulses behind the cavity so only the interleaving is wrong
    ev = [e for e in sched.events if not (e.atom == a1 and e.zone == "R2")]
    extra = PulseEvent(a1, "C1", RabiPulse(Mode.M1, 2 * np.pi), 0)
    idx = max(k for k, e in enumerate(ev) if e.atom == a2 and e.zone == "C1")
    ev.insert(idx + 1, extra)
    problems = validate(_with_events(sched, ev))
    assert len(problems) == 1 and "interleaved" in problems[0]
    assert "A1" in problems[0] and "A2" in problems[0]


def test_ordering_violation_flagged():
    sched = compile_schedule(1, 3)
    a1 = sched.main_atoms[0]
    ev = list(sched.events)
    r2 = [e for e in ev if e.atom == a1 and e.zone == "R2"]
    for e in r2:
        ev.remove(e)
    first_c1 = next(k for k, e in enumerate(ev) if e.atom == a1 and e.zone == "C1")
    ev[first_c1:first_c1] = r2
    problems = validate(_with_events(sched, ev))
    assert any("ordering violation" in p for p in problems)


def test_auxiliary_precedence_flagged():
    sched = compile_schedule(1, 3)
    ev = list(sched.events)
    aux = [e for e in ev if e.atom == 0 and e.zone == "C1"]
    ev.remove(aux[0])
    ev.append(aux[0])
    problems = validate(_with_events(sched, ev))
    assert any("As1" in p for p in problems)


def test_unknown_zone_and_missing_atom():
    sched = compile_schedule(1, 2)
    ev = [e for e in sched.events if e.atom != sched.main_atoms[-1]]
    ev.append(PulseEvent(1, "C7", DetunedPass(), 0))
    problems = validate(_with_events(sched, ev))
    assert any("C7" in p for p in problems)
    assert any("no event" in p for p in problems)


def test_simulate_refuses_invalid():
    sched = compile_schedule(1, 3)
    ev = list(sched.events)
    ev.append(PulseEvent(0, "R1", RamseyPulse(np.pi), 0))
    with pytest.raises(ScheduleError):
        simulate(_with_events(sched, ev))


def test_empty_schedule_returns_initial_state():
    sched = empty_schedule(2)
    assert validate(sched) == [f"A{k} takes part in no event" for k in (1, 2)]
    state, rep = simulate(sched)
    assert np.array_equal(state.amplitudes, initial_state(chain_register(sched)).amplitudes)
    assert rep.factor_fidelities == {}


def test_calibrate_compiled_is_identity():
    assert calibrate() == ("I",) * 4
    assert calibrate(compile_schedule(2, 2)) == ("I",) * 4


def _drop_correction(sched, pos):
    a = sched.main_atoms[pos]
    return _with_events(sched, [e for e in sched.events if not (e.atom == a and e.zone == "R2")])


@pytest.mark.parametrize("pos", [0, 1, 2])
def test_calibrate_finds_missing_frame(pos):
    broken = _drop_correction(compile_schedule(1, 4), pos)
    _, rep = simulate(broken)
    target = encode_reference(broken.lattice, broken.mapping)
    assert fidelity_up_to_phase(rep.main_state, target) < 0.9
    fix = calibrate(broken)
    assert fix == tuple("Z" if k == pos else "I" for k in range(4))
    fixed = apply_frame_corrections(broken, fix)
    assert validate(fixed) == []
    assert fixed.frame_corrections == fix
    ver, _ = fidelity_of(fixed)
    assert ver.fidelity >= 1 - 1e-10
    assert calibrate(fixed) == ("I",) * 4


def test_calibrate_gives_up_on_wrong_state():
    sched = compile_schedule(1, 3)
    ev = [e for e in sched.events if not (e.atom == sched.main_atoms[0] and e.zone == "R1")]
    with pytest.raises(CalibrationError):
        calibrate(_with_events(sched, ev))


def test_apply_frame_corrections_checks_input():
    sched = compile_schedule(1, 3)
    with pytest.raises(ValueError):
        apply_frame_corrections(sched, ("I",))
    with pytest.raises(ValueError):
        apply_frame_corrections(sched, ("I", "X", "I"))


def test_zone_order():
    app = Apparatus(cavity_count=2)
    assert app.zones() == ["R1", "C1", "R2", "C2", "R3", "Rd"]
    assert app.zone_rank("Rc2") == app.zone_rank("C2")
    with pytest.raises(ScheduleError):
        app.zone_rank("C3")
    with pytest.raises(ScheduleError):
        Apparatus(cavity_count=0)
