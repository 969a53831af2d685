"""Symmetries of quantum n-spaces under U_q(sl(m+1))."""

__version__ = "0.1.0"
