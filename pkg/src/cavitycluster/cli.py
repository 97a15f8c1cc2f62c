"""Command-line front end: compile, run, identities, render, estimate.

Exit codes: 0 success, 1 failed precondition or verification, 2 I/O or
parse failure. Files written without an explicit path land in
``$CAVITYCLUSTER_OUTDIR`` (default: the current directory).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import gates, mbqc
from .cluster import GE, verify
from .render import render
from .resources import HardwareParams, estimate_chain_length, schedule_cost
from .schedule import (
    Apparatus,
    Schedule,
    ScheduleError,
    SimulationError,
    compile_schedule,
    dumps,
    loads,
    simulate,
)

OUTDIR_ENV = "CAVITYCLUSTER_OUTDIR"
SWEEP = [(1, n) for n in range(2, 9)] + [(2, n) for n in range(2, 5)] + [(3, 2), (3, 3)]


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _outdir() -> Path:
    return Path(os.environ.get(OUTDIR_ENV, "."))


def _write(text: str, path: str | None, default_name: str | None) -> str:
    if path == "-" or (path is None and default_name is None):
        sys.stdout.write(text)
        return "-"
    target = Path(path) if path else _outdir() / default_name
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    except OSError as err:
        raise CLIError(f"cannot write {target}: {err}", 2) from err
    return str(target)


def _read_schedule(path: str) -> Schedule:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise CLIError(f"cannot read {path}: {err}", 2) from err
    try:
        return loads(text)
    except ValueError as err:
        raise CLIError(f"cannot parse schedule {path}: {err}", 2) from err


def _compile(args) -> Schedule:
    app = None
    if args.cavities is not None or args.delta is not None:
        defaults = Apparatus()
        try:
            app = Apparatus(args.cavities or defaults.cavity_count, args.delta or defaults.delta)
        except ScheduleError as err:
            raise CLIError(str(err), 1) from err
    try:
        return compile_schedule(args.rows, args.cols, app)
    except ScheduleError as err:
        raise CLIError(f"precondition failed: {err}", 1) from err


def cmd_compile(args) -> int:
    sched = _compile(args)
    where = _write(dumps(sched) + "\n", args.out, f"schedule_{args.rows}x{args.cols}.json")
    if where != "-":
        print(where)
    return 0


def _parse_measure(spec: str) -> tuple[int, float | None]:
    try:
        pos, _, angle = spec.partition(":")
        return int(pos), (None if angle.lower() == "z" else float(angle))
    except ValueError:
        raise CLIError(f"bad --measure {spec!r}; use POSITION:ANGLE or POSITION:z", 1) from None


def run_report(sched: Schedule, truncation: int = 2, measure=(), seed: int | None = None) -> dict:
    try:
        _, report = simulate(sched, fock_dim=truncation)
    except (ScheduleError, SimulationError) as err:
        raise CLIError(f"simulation failed: {err}", 1) from err
    ver = verify(report.main_state, sched.lattice, sched.mapping)
    rng = np.random.default_rng(seed)
    transcript = mbqc.Transcript()
    state = report.main_state
    for pos, angle in measure:
        if not 1 <= pos <= len(sched.main_atoms):
            raise CLIError(f"--measure position {pos} outside chain of {len(sched.main_atoms)}", 1)
        enc = sched.mapping.encodings[pos - 1]
        if angle is None:
            rec = mbqc.measure_computational(state, pos - 1, enc, rng)
        elif enc == GE:
            rec = mbqc.measure_via_ramsey(state, pos - 1, angle, rng)
        else:
            rec = mbqc.measure_phase(state, pos - 1, angle, enc, rng)
        state = rec.post_state
        transcript.add(rec)
    report.measurements = transcript.records
    return {
        "lattice": {"rows": sched.rows, "cols": sched.cols},
        "truncation": truncation,
        "passed": ver.passed() and report.leakage < 1e-12,
        "verification": ver.to_dict(),
        "run": report.to_dict(),
        "frame_corrections": list(sched.frame_corrections),
        "cost": schedule_cost(sched).to_dict(),
    }


def _sweep_case(case):
    rows, cols, truncation = case
    return run_report(compile_schedule(rows, cols), truncation)


def cmd_run(args) -> int:
    if args.sweep:
        cases = [(r, c, args.truncation) for r, c in SWEEP]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                reports = list(pool.map(_sweep_case, cases))
        else:
            reports = [_sweep_case(c) for c in cases]
        for rep in reports:
            v = rep["verification"]
            print(f"{rep['lattice']['rows']}x{rep['lattice']['cols']} fidelity={v['fidelity']:.15f} "
                  f"{'PASS' if rep['passed'] else 'FAIL'}")
        doc = {"sweep": reports}
        name = "sweep_report.json"
        ok = all(r["passed"] for r in reports)
    else:
        if args.schedule:
            sched = _read_schedule(args.schedule)
        elif args.rows is not None and args.cols is not None:
            sched = _compile(args)
        else:
            raise CLIError("run needs --schedule or both --rows and --cols", 1)
        measure = [_parse_measure(m) for m in args.measure]
        doc = run_report(sched, args.truncation, measure, args.seed)
        name = f"report_{sched.rows}x{sched.cols}.json"
        ok = doc["passed"]
        print(f"fidelity={doc['verification']['fidelity']:.15f} {'PASS' if ok else 'FAIL'}")
    where = _write(json.dumps(doc, indent=2) + "\n", args.report, name)
    if where != "-":
        print(where)
    return 0 if ok else 1


def cmd_identities(args) -> int:
    if args.theta_grid < 1:
        raise CLIError("--theta-grid must be positive", 1)
    worst = 0.0
    for name in gates.IDENTITIES:
        r = gates.check_identity(name, theta_grid=args.theta_grid)
        worst = max(worst, r)
        print(f"{name} {r:.3e}")
    return 0 if worst < 1e-12 else 1


def cmd_render(args) -> int:
    sched = _read_schedule(args.schedule)
    _write(render(sched, args.format), args.out, None)
    return 0


def cmd_estimate(args) -> int:
    try:
        p = HardwareParams(args.lifetime, args.pi_pulse, args.epsilon, args.velocity)
    except ValueError as err:
        raise CLIError(str(err), 1) from err
    print(f"{estimate_chain_length(p):g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cavitycluster", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def lattice_flags(p, required):
        p.add_argument("--rows", type=int, required=required)
        p.add_argument("--cols", type=int, required=required)
        p.add_argument("--cavities", type=int, help="override the apparatus cavity count")
        p.add_argument("--delta", type=float, help="mode splitting in rad/s")

    p = sub.add_parser("compile", help="write a pulse schedule as JSON")
    lattice_flags(p, True)
    p.add_argument("--out", help="output file ('-' for stdout)")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("run", help="simulate and verify a schedule")
    lattice_flags(p, False)
    p.add_argument("--schedule", help="schedule JSON to run instead of compiling")
    p.add_argument("--truncation", type=int, default=2, help="Fock dimension per mode")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--measure", action="append", default=[], metavar="POS:ANGLE",
                   help="measure main-chain atom POS (1-based) in the phase basis, or POS:z")
    p.add_argument("--sweep", action="store_true", help="run every lattice in the standard sweep")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", help="report file ('-' for stdout)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("identities", help="print gate identity residuals")
    p.add_argument("--theta-grid", type=int, default=16)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("render", help="draw a schedule timeline")
    p.add_argument("schedule")
    p.add_argument("--format", choices=("text", "svg"), default="text")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_render)

    d = HardwareParams()
    p = sub.add_parser("estimate", help="chain length that fits in one coherence time")
    p.add_argument("--lifetime", type=float, default=d.lifetime, help="seconds")
    p.add_argument("--pi-pulse", type=float, default=d.pi_pulse, help="seconds")
    p.add_argument("--epsilon", type=float, default=d.epsilon)
    p.add_argument("--velocity", type=float, default=d.velocity, help="m/s")
    p.set_defaults(func=cmd_estimate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CLIError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code


if __name__ == "__main__":
    sys.exit(main())
