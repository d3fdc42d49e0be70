"""SVG figures and text reports."""

from papertorus.render.figures import render_development_svg, render_projection_svg, render_slice_svg
from papertorus.render.reports import render_text_report, write_sidecar, write_text

__all__ = [
    "render_development_svg",
    "render_projection_svg",
    "render_slice_svg",
    "render_text_report",
    "write_sidecar",
    "write_text",
]
