"""SVG output for wiring diagrams.

Per column, curves are stacked top to bottom with a gap of ``delta_group``
between neighbours in the same active event and ``delta_sep`` otherwise;
consecutive columns are joined by straight segments, so all crossings
happen between columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from .model import Storyline, StorylineError, WiringDiagram, verify_solution

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


class RenderError(StorylineError):
    pass


@dataclass(frozen=True)
class RenderConfig:
    delta_group: float = 8
    delta_sep: float = 24
    column_width: float = 40
    stroke_width: float = 2
    margin: float = 20
    label_width: float = 60
    colors: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.delta_sep > self.delta_group > 0:
            raise ValueError("need delta_sep > delta_group > 0")
        if self.column_width <= 0:
            raise ValueError("column_width must be positive")


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def column_gaps(s: Storyline, order: tuple[int, ...], t: int, cfg: RenderConfig) -> list[float]:
    """Vertical gap between each consecutive pair of ``order`` at column ``t``."""
    group_of = {}
    for i, e in enumerate(s.events):
        if e.start <= t <= e.end:
            for c in e.members:
                group_of[c] = i
    gaps = []
    for a, b in zip(order, order[1:]):
        ga = group_of.get(a)
        gaps.append(cfg.delta_group if ga is not None and ga == group_of.get(b) else cfg.delta_sep)
    return gaps


def layout_y(s: Storyline, d: WiringDiagram, cfg: RenderConfig) -> list[dict[int, float]]:
    """Per column, the y coordinate of every character."""
    columns = []
    for t, order in zip(d.times, d.orders):
        y = cfg.margin
        ys = {order[0]: y} if order else {}
        for c, gap in zip(order[1:], column_gaps(s, order, t, cfg)):
            y += gap
            ys[c] = y
        columns.append(ys)
    return columns


def render_svg(s: Storyline, d: WiringDiagram, cfg: RenderConfig | None = None, force: bool = False) -> str:
    """SVG text with one ``<polyline>`` per character, ``id`` set to its name.

    Raises:
        RenderError: ``d`` fails verification and ``force`` is not set.
    """
    cfg = cfg or RenderConfig()
    if not force and not verify_solution(s, d).valid:
        raise RenderError("diagram breaks event contiguity; pass force=True to render anyway")
    ys = layout_y(s, d, cfg)
    x0 = cfg.margin + cfg.label_width
    xs = [x0 + (t - d.times[0]) * cfg.column_width for t in d.times]
    height = max((max(col.values()) for col in ys if col), default=cfg.margin) + cfg.margin
    width = xs[-1] + cfg.margin if xs else x0 + cfg.margin
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        '<g class="events" fill="#000" fill-opacity="0.06">',
    ]
    column = {t: j for j, t in enumerate(d.times)}
    for i, e in enumerate(s.events):
        for t in range(e.start, e.end + 1):
            j = column[t]
            top = min(ys[j][c] for c in e.members)
            bottom = max(ys[j][c] for c in e.members)
            lines.append(
                f'<rect class="event" data-event="{i}" x="{_num(xs[j] - 3)}" y="{_num(top - 3)}" '
                f'width="6" height="{_num(bottom - top + 6)}"/>'
            )
    lines.append("</g>")
    lines.append(f'<g class="curves" fill="none" stroke-width="{_num(cfg.stroke_width)}">')
    for c, name in enumerate(s.characters):
        color = cfg.colors.get(name, PALETTE[c % len(PALETTE)])
        points = " ".join(f"{_num(x)},{_num(col[c])}" for x, col in zip(xs, ys))
        lines.append(f"<polyline id={quoteattr(name)} stroke={quoteattr(color)} points=\"{points}\"/>")
    lines.append("</g>")
    lines.append('<g class="labels" font-family="sans-serif" font-size="12" text-anchor="end">')
    if ys:
        for c, name in enumerate(s.characters):
            lines.append(f'<text x="{_num(x0 - 6)}" y="{_num(ys[0][c] + 4)}">{escape(name)}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
