"""Toolkit for the combinatorics of generalized Greene-Plesser toric data."""

__version__ = "0.1.0"
