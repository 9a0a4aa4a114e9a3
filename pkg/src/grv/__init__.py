"""Gamma-function integral identities with numerical verification."""

__version__ = "0.1.0"
