"""Relative power integral bases of three families of quartic extensions of
imaginary quadratic fields, via reduction to quartic Thue equations."""

__version__ = "0.1.0"
