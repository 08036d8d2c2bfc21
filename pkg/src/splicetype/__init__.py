"""Splice diagrams, splice type systems, edge deformations and their tropical fans."""

__version__ = "0.1.0"
