"""
Tests for the SVG posture sheets.
"""
import re

import pytest

from Scripts.IsoKin.errors import NothingToRender
from Scripts.IsoKin.kinematics.chains import KinematicChain, Posture, forward_kinematics, placement
from Scripts.IsoKin.ui.svg_render import panel_from_configuration, render_svg


def _straight_panel():
    config = forward_kinematics(KinematicChain((1.0, 1.0)), Posture((0.0, 0.0)))
    return panel_from_configuration(config, "2R")


def test_single_straight_chain():
    svg = render_svg([_straight_panel()])
    assert svg.startswith('<?xml version="1.0"')
    assert svg.count("<g>") == 1
    assert svg.count("<circle ") == 2
    points = re.search(r'<polyline points="([^"]+)"', svg).group(1).split()
    assert len(points) == 3
    # collinear links along x stay on one row
    assert len({p.split(",")[1] for p in points}) == 1


def test_render_is_deterministic(half_square):
    panels = [panel_from_configuration(placement(half_square, o)[2], str(o), (0.0, 0.0))
              for o in [(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)]]
    assert render_svg(panels) == render_svg(panels)


def test_grid_layout(half_square):
    panel = panel_from_configuration(placement(half_square, (0, 1, 2, 3))[2], "square")
    svg = render_svg([panel] * 6)
    assert svg.count("<g>") == 6
    # ceil(sqrt(6)) = 3 columns of 240 and two rows of 258
    assert 'width="720" height="516"' in svg
    assert 'width="240" height="1548"' in render_svg([panel] * 6, columns=1)


def test_nothing_to_render():
    with pytest.raises(NothingToRender):
        render_svg([])
