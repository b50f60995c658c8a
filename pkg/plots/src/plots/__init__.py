"""Figure rendering for benchmark summary CSVs."""
from .contract import REQUIRED_COLUMNS, SCHEMA, SchemaError, SummaryCell, load_summary
from .render import METRICS, STRATEGY_ORDER, FigureSpec, RenderResult, render

__all__ = [
    "FigureSpec",
    "METRICS",
    "REQUIRED_COLUMNS",
    "RenderResult",
    "SCHEMA",
    "STRATEGY_ORDER",
    "SchemaError",
    "SummaryCell",
    "load_summary",
    "render",
]
