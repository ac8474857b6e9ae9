"""Exact construction and verification of semi-flat SU(3) mirror pairs on
solvable Lie algebras."""

__version__ = "0.1.0"
