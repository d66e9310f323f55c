"""Permutation trinomials over binary fields: numeric oracles and an exact replay of the proof."""

__version__ = "0.1.0"
