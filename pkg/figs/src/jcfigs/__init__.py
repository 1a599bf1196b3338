"""Figure rendering for the two-qubit coupled-resonator simulator outputs."""

from .render import FIGURES, FigureSpec, SchemaError, build_figure, render

__version__ = "0.1.0"

__all__ = ["FIGURES", "FigureSpec", "SchemaError", "build_figure", "render", "__version__"]
