"""Exact toolkit for alternating-path homomorphism densities in
red/blue edge-coloured graphs: constructions, covering verification,
entropy machinery, inequality checks and an exact LP feasibility search."""

from .ecgraph import BLUE, RED, Colour, EdgeColouredGraph

__all__ = ["BLUE", "RED", "Colour", "EdgeColouredGraph"]
__version__ = "0.1.0"
