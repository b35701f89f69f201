# In tests/test_report_renderer.py

import numpy as np

from padiclab.lib.interference_model import Histogram
from padiclab.lib.report_renderer import render_fringe_svg, render_report


def test_fringe_chart_has_one_bar_per_bin():
    svg = render_fringe_svg(Histogram(np.array([0, 5, 10, 5, 0, 1, 2, 1])), "two <slits>")
    assert svg.startswith("<svg")
    assert svg.count('fill="steelblue"') == 8
    assert "two &lt;slits&gt;" in svg
    assert "total 24" in svg
    assert "polyline" not in svg


def test_fringe_chart_scales_to_the_tallest_bar():
    svg = render_fringe_svg(Histogram(np.array([1, 4, 9, 4, 1, 0, 0, 0])), "scaled", height=320, margin=40)
    assert 'y="40.00" width="63.00" height="240.00"' in svg
    assert svg.count('height="240.00"') == 1


def test_empty_histogram_renders():
    svg = render_fringe_svg(Histogram(np.zeros(8, dtype=int)), "empty")
    assert "V = 0.000" in svg


def test_report_lists_analyses_and_simulations():
    analysis = {
        "name": "coin",
        "report": {
            "length": 1024,
            "prime": 2,
            "collective": "both",
            "real": {"status": "stabilized", "limit": "1/2"},
            "padic": {"status": "stabilized", "limit": "-1"},
            "growth": {"class": "linear", "decision": "confident"},
        },
    }
    simulation = {
        "name": "seq",
        "summary": {
            "scenario": "sequential",
            "trials": 2000,
            "provenance": {"seed": 7, "spec_hash": "abc"},
            "visibility": 0.98761,
            "pooled_coherence": None,
            "chi_square_p_value": 0.5,
            "poisson": None,
        },
        "chart": "seq.fringes.svg",
    }
    markdown = render_report(["coin.verdict.json", "seq.summary.json"], [analysis], [simulation])
    assert "from 2 artifact(s)" in markdown
    assert "## Sequence analysis: coin" in markdown
    assert "Collective: **both**" in markdown
    assert "(limit -1)" in markdown
    assert "Complexity growth: **linear**" in markdown
    assert "## Simulation: seq" in markdown
    assert "Visibility: 0.9876" in markdown
    assert "Pooled coherence" not in markdown
    assert "![fringe chart](seq.fringes.svg)" in markdown
