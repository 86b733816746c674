"""Static plots from gainwalk probability CSV files."""

from .render import FigureSpec, read_probability_csv, render

__version__ = "0.1.0"
