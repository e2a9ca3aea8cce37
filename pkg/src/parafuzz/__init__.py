"""Triangular and parabolic fuzzy controllers for the cart-pole."""

__version__ = "0.1.0"
