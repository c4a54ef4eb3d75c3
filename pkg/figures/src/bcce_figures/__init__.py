"""Figure rendering for bcce experiment CSVs."""

from .render import render
from .schema import SchemaError, load_table

__version__ = "0.1.0"

__all__ = ["render", "SchemaError", "load_table", "__version__"]
