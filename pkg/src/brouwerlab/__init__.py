"""Finite Brouwer algebras, factor algebras and a finite simulation of
Muchnik/Medvedev mass problems over explicit degree structures."""

__version__ = "0.1.0"
