"""Exact Lie and Leibniz cohomology and low-order deformations of small algebras."""

__version__ = "0.1.0"
