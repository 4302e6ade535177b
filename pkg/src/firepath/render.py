"""ASCII and SVG pictures of a finished run.

Renderers read only the serialized run record, so a picture can always be
regenerated from a saved ``run.json`` without re-planning.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .scenario import RunRecord


@dataclass(frozen=True)
class RenderStyle:
    actor_color: str = "green"
    obstacle_color: str = "yellow"
    fire_color: str = "red"
    path_color: str = "cyan"
    sensor_color: str = "#9e9e9e"
    corner_color: str = "#3f51b5"
    grid_color: str = "#cfcfcf"
    cell_px: int = 24
    # ASCII glyphs
    empty_glyph: str = "."  # every cell holds a sensor
    obstacle_glyph: str = "#"
    actor_glyph: str = "A"
    fire_glyph: str = "F"
    path_glyph: str = "*"
    corner_glyph: str = "C"


DEFAULT_STYLE = RenderStyle()


def _as_dict(record) -> dict:
    return record.to_dict() if isinstance(record, RunRecord) else record


def _layout(rec: dict):
    sc = rec["scenario"]
    rows, cols = sc["grid"]["rows"], sc["grid"]["cols"]
    obstacles = {tuple(c) for c in sc["obstacles"]}
    out = rec["outbound"]
    start = tuple(out["start"])
    fire = tuple(out["goal"])
    return rows, cols, obstacles, start, fire, out, rec.get("return")


def render_ascii(record, style: RenderStyle = DEFAULT_STYLE) -> str:
    rec = _as_dict(record)
    rows, cols, obstacles, start, fire, out, _ = _layout(rec)
    path = {(r, c) for _, r, c in out["moves"]}
    corners = {(1, 1), (1, cols), (rows, 1), (rows, cols)}

    def glyph(cell):
        if cell == start:
            return style.actor_glyph
        if cell == fire:
            return style.fire_glyph
        if cell in obstacles:
            return style.obstacle_glyph
        if cell in path:
            return style.path_glyph
        if cell in corners:
            return style.corner_glyph
        return style.empty_glyph

    width = len(str(max(rows, cols)))
    head = " " * (width + 1) + " ".join(str(c % 10) for c in range(1, cols + 1))
    lines = [head]
    for r in range(1, rows + 1):
        lines.append(f"{r:>{width}} " + " ".join(glyph((r, c)) for c in range(1, cols + 1)))
    m = rec["metrics"]
    lines.append("")
    lines.append(
        f"{style.actor_glyph}=actor {style.fire_glyph}=fire {style.obstacle_glyph}=obstacle "
        f"{style.path_glyph}=path {style.corner_glyph}=corner node"
    )
    lines.append(
        f"outcome={m['outcome']} length={m['path_length']} oracle={m['oracle_length']} "
        f"return={m['return_length']}"
    )
    return "\n".join(lines) + "\n"


def _center(cell, px: int) -> tuple[float, float]:
    # svg x runs along columns, y down the rows
    r, c = cell
    return (c - 0.5) * px, (r - 0.5) * px


def _polyline(cells, color: str, px: int, dashed: bool = False) -> str:
    pts = " ".join(f"{x:g},{y:g}" for x, y in (_center(c, px) for c in cells))
    dash = ' stroke-dasharray="4 3"' if dashed else ""
    return (
        f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="{px / 6:g}"'
        f' stroke-linecap="round" stroke-linejoin="round"{dash}/>'
    )


def render_svg(record, style: RenderStyle = DEFAULT_STYLE) -> str:
    rec = _as_dict(record)
    rows, cols, obstacles, start, fire, out, back = _layout(rec)
    px = style.cell_px
    w, h = cols * px, rows * px
    corners = {(1, 1), (1, cols), (rows, 1), (rows, cols)}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
    ]
    for r in range(1, rows + 1):
        for c in range(1, cols + 1):
            x, y = (c - 1) * px, (r - 1) * px
            if (r, c) in obstacles:
                fill = style.obstacle_color
            elif (r, c) == fire:
                fill = style.fire_color
            else:
                fill = "none"
            parts.append(
                f'<rect x="{x}" y="{y}" width="{px}" height="{px}" fill="{fill}" stroke="{style.grid_color}"/>'
            )
            cx, cy = _center((r, c), px)
            color = style.corner_color if (r, c) in corners else style.sensor_color
            radius = px / 6 if (r, c) in corners else px / 12
            parts.append(f'<circle cx="{cx:g}" cy="{cy:g}" r="{radius:g}" fill="{color}"/>')
    if back is not None and back["moves"]:
        cells = [tuple(back["start"])] + [(r, c) for _, r, c in back["moves"]]
        parts.append(_polyline(cells, style.path_color, px, dashed=True))
    if out["moves"]:
        cells = [start] + [(r, c) for _, r, c in out["moves"]]
        parts.append(_polyline(cells, style.path_color, px))
    ax, ay = _center(start, px)
    parts.append(
        f'<ellipse cx="{ax:g}" cy="{ay:g}" rx="{px * 0.4:g}" ry="{px * 0.3:g}" fill="{style.actor_color}"/>'
    )
    m = rec["metrics"]
    title = f"outcome={m['outcome']} length={m['path_length']} oracle={m['oracle_length']}"
    parts.append(f"<title>{escape(title)}</title>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
