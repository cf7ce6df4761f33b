"""Desk-scale 3D-controllable face manipulation sandbox."""

__version__ = "0.1.0"
