# In src/padiclab/plugins/report.py
"""`padiclab report`: collect verdict and simulation JSON into a markdown report."""

import argparse
import json
from pathlib import Path

from padiclab.lib.artifact_writer import resolve_output, write_text_atomic
from padiclab.lib.constants import EXIT_OK
from padiclab.lib.logging_config import get_logger
from padiclab.lib.models import SimulationSummary, VerdictReport
from padiclab.lib.report_renderer import render_fringe_svg, render_report
from padiclab.lib.sequence_io import read_histogram_csv

logger = get_logger(__name__)


def _artifact_name(path: Path) -> str:
    name = path.name
    for suffix in (".verdict.json", ".summary.json", ".json"):
        if name.endswith(suffix):
            return name[: -len(suffix)]
    return name


def _find_histogram(summary: SimulationSummary, source: Path, output_dir: str) -> Path | None:
    relative = summary.artifacts.get("histogram")
    if relative is None:
        return None
    for candidate in (source.parent / relative, resolve_output(relative, output_dir)):
        if candidate.is_file():
            return candidate
    logger.warning("Histogram %s of %s not found, no chart", relative, source)
    return None


def run(args: argparse.Namespace) -> int:
    out_path = resolve_output(args.output, args.output_dir)
    analyses, simulations, sources = [], [], []
    for text in args.artifacts:
        source = Path(text)
        document = json.loads(source.read_text(encoding="utf-8"))
        name = _artifact_name(source)
        sources.append(str(source))
        if "collective" in document:
            report = VerdictReport.model_validate(document)
            analyses.append({"name": name, "report": report.model_dump(mode="json")})
        elif "scenario" in document:
            summary = SimulationSummary.model_validate(document)
            chart = None
            histogram_path = _find_histogram(summary, source, args.output_dir)
            if histogram_path is not None:
                svg = render_fringe_svg(read_histogram_csv(histogram_path), f"{summary.scenario} ({name})")
                chart_path = out_path.parent / f"{name}.fringes.svg"
                write_text_atomic(chart_path, [svg.rstrip("\n")])
                chart = chart_path.name
            simulations.append({"name": name, "summary": summary.model_dump(mode="json"), "chart": chart})
        else:
            raise ValueError(f"{source} is neither a verdict nor a simulation summary")

    markdown = render_report(sources, analyses, simulations)
    write_text_atomic(out_path, [markdown.rstrip("\n")])
    logger.info("Report with %d analyses and %d simulations", len(analyses), len(simulations))
    print(out_path)
    return EXIT_OK


def setup(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "report",
        help="Render verdict and simulation JSON artifacts as a markdown report",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("artifacts", nargs="+", help="*.verdict.json and *.summary.json files")
    parser.add_argument("-o", "--output", default="report.md", help="Markdown output file")
    parser.set_defaults(handler=run)
