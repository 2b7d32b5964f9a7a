"""Finite-model workbench for frames, sublocales, filters and Raney extensions."""

__version__ = "0.1.0"
