"""Spectral lab for the Friedrichs Laplacian on singular hyperbolic tubes."""

__version__ = "1.0.0"
