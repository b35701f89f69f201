# In src/padiclab/lib/report_renderer.py
"""Jinja2 rendering of the SVG fringe chart and the markdown run report."""

from dataclasses import dataclass
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined, select_autoescape

from padiclab import __version__
from padiclab.config import TEMPLATE_PATH
from padiclab.lib.interference_model import Histogram, visibility

_environment = Environment(
    loader=FileSystemLoader(TEMPLATE_PATH),
    autoescape=select_autoescape(["svg", "svg.j2"]),
    undefined=StrictUndefined,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


@dataclass(frozen=True)
class _Bar:
    x: float
    y: float
    width: float
    height: float


def render_fringe_svg(
    h: Histogram,
    title: str,
    width: int = 640,
    height: int = 320,
    margin: int = 40,
) -> str:
    """Bar chart of bin counts."""
    counts = h.counts.astype(float)
    peak = max(float(counts.max()), 1.0)
    plot_width = width - 2 * margin
    plot_height = height - 2 * margin
    step = plot_width / h.bins
    bars = [
        _Bar(margin + i * step, height - margin - c / peak * plot_height, step * 0.9, c / peak * plot_height)
        for i, c in enumerate(counts)
    ]
    return _environment.get_template("fringe_chart.svg.j2").render(
        title=title,
        width=width,
        height=height,
        margin=margin,
        bars=bars,
        total=h.total,
        visibility=visibility(h) if h.total else 0.0,
    )


def render_report(
    sources: list[str],
    analyses: list[dict[str, Any]],
    simulations: list[dict[str, Any]],
) -> str:
    """
    Markdown summary of previously written JSON artifacts.

    Args:
        sources: Paths of the artifacts that went into the report
        analyses: Items {"name", "report"} holding VerdictReport documents
        simulations: Items {"name", "summary", "chart"} holding SimulationSummary documents
    """
    return _environment.get_template("report.md.j2").render(
        version=__version__, sources=sources, analyses=analyses, simulations=simulations
    )
