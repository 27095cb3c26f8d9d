"""
Rendering for IsoKin.

This module provides the SVG posture sheets drawn by the render command.
"""
