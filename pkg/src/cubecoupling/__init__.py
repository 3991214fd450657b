"""Duality-diagram analyses for sequences of paired ecological tables."""

__version__ = "0.1.0"
