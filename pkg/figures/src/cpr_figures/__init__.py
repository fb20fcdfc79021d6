"""Figure rendering for fragile-cpr reproduction CSVs."""

from .render import (MANIFEST, FigureSpec, MissingInputError, PanelSpec,
                     SchemaMismatchError, SeriesSpec, read_table, render,
                     render_all)

__all__ = ["MANIFEST", "FigureSpec", "MissingInputError", "PanelSpec",
           "SchemaMismatchError", "SeriesSpec", "read_table", "render",
           "render_all"]
