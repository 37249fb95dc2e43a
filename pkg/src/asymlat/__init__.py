"""Compact convex sets in the plane with an asymmetric lattice norm."""

__version__ = "0.1.0"
