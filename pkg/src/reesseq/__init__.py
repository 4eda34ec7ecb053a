"""Sequences, Rees algebras and bigraded regularity over polynomial rings."""

__version__ = "0.1.0"
