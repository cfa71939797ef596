"""Vacuum electromagnetic field correlation spectra for static, rectilinear and revolving point pairs."""

__version__ = "0.1.0"
