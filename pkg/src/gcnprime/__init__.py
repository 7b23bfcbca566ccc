"""Primality testing toolkit for Generalized Cullen Numbers n*b^n + 1."""

__version__ = "0.1.0"
