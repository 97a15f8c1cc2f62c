"""Timeline pictures of a pulse schedule, one row per atom.

Glyphs: a filled diamond is a Rabi pulse (annotated with its angle and
mode), a filled circle an e-g Ramsey pulse and an open circle a g-a Ramsey
pulse, both annotated with (phi, varphi). A dash marks a detuned pass.
"""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

import numpy as np

from .gates import Transition
from .schedule import DetunedPass, RabiPulse, RamseyPulse, Schedule

RABI, EG, GA, DETUNED = "◆", "●", "○", "─"


def format_angle(x: float) -> str:
    """Multiples of pi/4 as e.g. ``3π/2``; anything else as a plain decimal."""
    k = x / (np.pi / 4)
    if abs(k - round(k)) > 1e-9:
        return f"{x:.4g}"
    f = Fraction(int(round(k)), 4)
    if f == 0:
        return "0"
    num = {1: "", -1: "-"}.get(f.numerator, str(f.numerator))
    return f"{num}π" + (f"/{f.denominator}" if f.denominator != 1 else "")


def glyph(kind) -> str:
    if isinstance(kind, RabiPulse):
        return f"{RABI}{format_angle(kind.theta)}:{kind.mode.value}"
    if isinstance(kind, RamseyPulse):
        mark = EG if kind.transition is Transition.EG else GA
        return f"{mark}({format_angle(kind.phi)},{format_angle(kind.varphi)})"
    return DETUNED


def _columns(schedule: Schedule) -> list[str]:
    # in-cavity Ramsey pulses share their cavity's column
    return [z if not z.startswith("C") else f"{z}/Rc{z[1:]}" for z in schedule.apparatus.zones()]


def _cells(schedule: Schedule) -> dict[int, dict[int, list[str]]]:
    zones = schedule.apparatus.zones()
    rank = {z: k for k, z in enumerate(zones)}
    out: dict[int, dict[int, list[str]]] = {}
    for e in schedule.events:
        zone = f"C{e.zone[2:]}" if e.zone.startswith("Rc") else e.zone
        token = glyph(e.kind)
        if e.zone.startswith("Rc"):
            token = "Rc" + token
        out.setdefault(e.atom, {}).setdefault(rank[zone], []).append(token)
    return out


def _title(schedule: Schedule) -> str:
    return (
        f"# timeline  lattice {schedule.rows}x{schedule.cols}  atoms {schedule.chain_length}"
        f"  cavities {schedule.apparatus.cavity_count}  events {len(schedule.events)}"
    )


def render_text(schedule: Schedule) -> str:
    cols = _columns(schedule)
    cells = _cells(schedule)
    table = [["atom"] + cols]
    for a in sorted(cells):
        table.append([schedule.atom_label(a)] + [" ".join(cells[a].get(k, [])) for k in range(len(cols))])
    widths = [max(len(row[k]) for row in table) for k in range(len(table[0]))]
    lines = [_title(schedule)]
    for row in table:
        lines.append(" | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_svg(schedule: Schedule) -> str:
    cols = _columns(schedule)
    cells = _cells(schedule)
    atoms = sorted(cells)
    slot, row_h, left, top = 78, 44, 64, 56
    span = [max([len(cells[a].get(k, [])) for a in atoms] + [1]) for k in range(len(cols))]
    x0 = np.concatenate([[left], left + slot * np.cumsum(span)])
    width, height = int(x0[-1]) + 20, top + row_h * len(atoms) + 20
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="11">',
        f'<text class="title" x="8" y="16">{escape(_title(schedule)[2:])}</text>',
    ]
    for k, name in enumerate(cols):
        out.append(f'<text class="zone" x="{x0[k] + 4:.0f}" y="40">{escape(name)}</text>')
        out.append(f'<line class="zone-rule" x1="{x0[k]:.0f}" y1="44" x2="{x0[k]:.0f}" y2="{height - 10}" stroke="#ccc"/>')
    events_by_atom: dict[int, list] = {a: [] for a in atoms}
    for e in schedule.events:
        events_by_atom[e.atom].append(e)
    zones = schedule.apparatus.zones()
    for r, a in enumerate(atoms):
        y = top + row_h * r + row_h / 2
        label = schedule.atom_label(a)
        out.append(f'<g class="atom-row" data-atom="{label}">')
        out.append(f'<text class="atom" x="8" y="{y + 4:.0f}">{label}</text>')
        out.append(f'<line class="track" x1="{left}" y1="{y:.0f}" x2="{width - 20}" y2="{y:.0f}" stroke="#888"/>')
        used = [0] * len(cols)
        for e in events_by_atom[a]:
            k = zones.index(f"C{e.zone[2:]}" if e.zone.startswith("Rc") else e.zone)
            cx = x0[k] + slot * used[k] + slot / 2
            used[k] += 1
            out.append(_svg_glyph(e.kind, cx, y))
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _svg_glyph(kind, cx: float, y: float) -> str:
    note = f'<text x="{cx:.0f}" y="{y + 18:.0f}" text-anchor="middle">{escape(glyph(kind)[1:])}</text>'
    if isinstance(kind, RabiPulse):
        pts = f"{cx:.0f},{y - 8:.0f} {cx + 8:.0f},{y:.0f} {cx:.0f},{y + 8:.0f} {cx - 8:.0f},{y:.0f}"
        return f'<polygon class="rabi" points="{pts}" fill="black"/>' + note
    if isinstance(kind, RamseyPulse):
        if kind.transition is Transition.EG:
            return f'<circle class="ramsey-eg" cx="{cx:.0f}" cy="{y:.0f}" r="6" fill="black"/>' + note
        return f'<circle class="ramsey-ga" cx="{cx:.0f}" cy="{y:.0f}" r="6" fill="white" stroke="black"/>' + note
    assert isinstance(kind, DetunedPass)
    return f'<line class="detuned" x1="{cx - 10:.0f}" y1="{y:.0f}" x2="{cx + 10:.0f}" y2="{y:.0f}" stroke="black" stroke-dasharray="2,2"/>'


def render(schedule: Schedule, fmt: str = "text") -> str:
    if fmt == "text":
        return render_text(schedule)
    if fmt == "svg":
        return render_svg(schedule)
    raise ValueError(f"unknown render format {fmt!r}; use 'text' or 'svg'")
