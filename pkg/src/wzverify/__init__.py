"""Exact and high-precision verification of WZ certificates and extended Ramanujan-type series."""

__version__ = "0.1.0"
