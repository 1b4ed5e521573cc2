"""Semiregular automorphisms of edge-transitive graphs of valency three and four."""

__version__ = "0.1.0"
