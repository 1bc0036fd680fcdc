"""Figure rendering for tagtrace CSV outputs."""

from tagfigures.render import (
    FORMATS,
    KINDS,
    REQUIRED_COLUMNS,
    DataError,
    FigureError,
    FigureSpec,
    RenderResult,
    SchemaError,
    SpecError,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "FORMATS",
    "KINDS",
    "REQUIRED_COLUMNS",
    "DataError",
    "FigureError",
    "FigureSpec",
    "RenderResult",
    "SchemaError",
    "SpecError",
    "render",
    "__version__",
]
