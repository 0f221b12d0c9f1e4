"""Proximity proofs for codes on Cayley graphs, folded down to a single vertex."""

__version__ = "0.1.0"
