from .render import PlotError, PlotSpec, Row, build_figure, load_rows, render

__all__ = ["PlotError", "PlotSpec", "Row", "build_figure", "load_rows", "render"]
