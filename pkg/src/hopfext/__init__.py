"""Exact cohomology engine for a rank-one translation Hopf algebroid at p=5."""

__version__ = "0.1.0"
