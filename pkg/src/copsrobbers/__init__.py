"""Cops and Robbers strategies for graphs of bounded diameter and girth."""

from .graph import Digraph, Graph, ball, diameter, girth, sphere

__all__ = ["Digraph", "Graph", "ball", "diameter", "girth", "sphere"]
__version__ = "0.1.0"
