"""Constructive multiplicativity for square-free graphs and circular cliques."""

__version__ = "0.1.0"
