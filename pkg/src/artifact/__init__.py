"""Elliptic functions, modular forms and thermal correlators of free conformal fields."""

__version__ = "0.1.0"
