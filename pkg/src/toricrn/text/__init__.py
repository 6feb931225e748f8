# Text formats: network and rate files, JSON reports
from .parser import SourceDocument, parse_network, parse_rates, render_network, render_rates
from .report import AnalysisReport, load_report, render_plain, render_report

__all__ = [
    "AnalysisReport",
    "SourceDocument",
    "load_report",
    "parse_network",
    "parse_rates",
    "render_network",
    "render_plain",
    "render_rates",
    "render_report",
]
