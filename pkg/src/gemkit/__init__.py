"""Exact combinatorics of edge-colored graphs, stacked maps and their gluings."""

from .core import ColoredGraph, GraphError, parse, serialize

__all__ = ["ColoredGraph", "GraphError", "parse", "serialize"]
__version__ = "0.1.0"
