"""
SVG posture sheets for IsoKin.

Draws one panel per manipulator: links as segments from joint to joint,
revolute centers as circles, the operation point as a filled square and the
centroid of the point set as a cross-hair. Panels are laid out row by row.
The output only depends on the input numbers, so equal inputs give equal
bytes.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..errors import NothingToRender
from ..kinematics.chains import ChainConfiguration

PANEL_SIZE = 240.0
PANEL_MARGIN = 16.0
TITLE_HEIGHT = 18.0
CIRCLE_FRACTION = 0.02

LINK_STYLE = "stroke:#1f3a93;stroke-width:2;fill:none"
JOINT_STYLE = "stroke:#000000;stroke-width:1.2;fill:#ffffff"
POINT_STYLE = "stroke:none;fill:#c0392b"
CROSS_STYLE = "stroke:#7f8c8d;stroke-width:1"

PREAMBLE = (
    '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    'width="{width}" height="{height}" viewBox="0 0 {width} {height}">\n'
    '<rect x="0" y="0" width="{width}" height="{height}" style="fill:#ffffff"/>\n'
)
POSTAMBLE = "</svg>\n"


@dataclass(frozen=True, eq=False)
class Panel:
    """One manipulator drawing."""
    title: str
    joints: np.ndarray
    operation_point: np.ndarray
    centroid: np.ndarray


def _num(value: float) -> str:
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def panel_from_configuration(config: ChainConfiguration, title: str,
                             centroid: Optional[Sequence[float]] = None) -> Panel:
    """A panel for a configuration; the centroid defaults to that of the joint centers."""
    joints = np.asarray(config.joint_centers, dtype=float)
    center = joints.mean(axis=0) if centroid is None else np.asarray(centroid, dtype=float)
    return Panel(title, joints, np.asarray(config.operation_point, dtype=float), center)


class _PanelCanvas:
    """Maps world coordinates (y up) into one panel cell (y down)."""

    def __init__(self, panel: Panel, left: float, top: float):
        points = np.vstack([panel.joints, panel.operation_point, panel.centroid])
        low, high = points.min(axis=0), points.max(axis=0)
        extent = float(max(high[0] - low[0], high[1] - low[1], 1e-12))
        self.diagonal = float(np.hypot(*(high - low))) or extent
        inner = PANEL_SIZE - 2.0 * PANEL_MARGIN
        self.scale = inner / extent
        self.mid = (low + high) / 2.0
        self.cx = left + PANEL_SIZE / 2.0
        self.cy = top + TITLE_HEIGHT + PANEL_SIZE / 2.0

    def xy(self, point) -> tuple:
        x = self.cx + (point[0] - self.mid[0]) * self.scale
        y = self.cy - (point[1] - self.mid[1]) * self.scale
        return x, y


def _draw_panel(panel: Panel, left: float, top: float) -> List[str]:
    canvas = _PanelCanvas(panel, left, top)
    radius = CIRCLE_FRACTION * canvas.diagonal * canvas.scale
    items = [f'<g>',
             f'<text x="{_num(left + PANEL_SIZE / 2.0)}" y="{_num(top + TITLE_HEIGHT - 4.0)}" '
             f'text-anchor="middle" font-family="sans-serif" font-size="12">{panel.title}</text>']

    path = [canvas.xy(p) for p in panel.joints] + [canvas.xy(panel.operation_point)]
    items.append('<polyline points="{}" style="{}"/>'.format(
        " ".join(f"{_num(x)},{_num(y)}" for x, y in path), LINK_STYLE))

    cx, cy = canvas.xy(panel.centroid)
    arm = 3.0 * radius
    items.append(f'<line x1="{_num(cx - arm)}" y1="{_num(cy)}" x2="{_num(cx + arm)}" '
                 f'y2="{_num(cy)}" style="{CROSS_STYLE}"/>')
    items.append(f'<line x1="{_num(cx)}" y1="{_num(cy - arm)}" x2="{_num(cx)}" '
                 f'y2="{_num(cy + arm)}" style="{CROSS_STYLE}"/>')

    for joint in panel.joints:
        x, y = canvas.xy(joint)
        items.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{_num(radius)}" style="{JOINT_STYLE}"/>')

    px, py = canvas.xy(panel.operation_point)
    items.append(f'<rect x="{_num(px - radius)}" y="{_num(py - radius)}" '
                 f'width="{_num(2.0 * radius)}" height="{_num(2.0 * radius)}" style="{POINT_STYLE}"/>')
    items.append('</g>')
    return items


def render_svg(panels: Sequence[Panel], columns: Optional[int] = None) -> str:
    """
    Lay panels out in a row-major grid and return the SVG text.

    Args:
        panels: Panels to draw
        columns: Panels per row, ceil(sqrt(count)) by default

    Returns:
        The SVG document
    """
    if not panels:
        raise NothingToRender("no manipulators selected for rendering")
    columns = columns or math.ceil(math.sqrt(len(panels)))
    rows = math.ceil(len(panels) / columns)
    cell_height = PANEL_SIZE + TITLE_HEIGHT
    width, height = columns * PANEL_SIZE, rows * cell_height

    lines = [PREAMBLE.format(width=_num(width), height=_num(height))]
    for index, panel in enumerate(panels):
        row, column = divmod(index, columns)
        lines.extend(item + "\n" for item in _draw_panel(panel, column * PANEL_SIZE, row * cell_height))
    lines.append(POSTAMBLE)
    return "".join(lines)
