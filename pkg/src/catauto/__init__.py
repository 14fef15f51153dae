"""Bounded symbolic checks for automorphisms of categories of free algebras."""

__version__ = "0.1.0"
