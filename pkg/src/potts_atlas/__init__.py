"""Exact boundary-condition atlas for the q-state Potts model on random planar maps."""

__version__ = "0.1.0"
