"""Quantum Fourier transform constructions, cost models, pulse-level NMR
simulation and simulated state tomography for small spin systems."""

from . import circuits, core, costmodel, nmr, tomography

__all__ = ["circuits", "core", "costmodel", "nmr", "tomography"]
__version__ = "0.1.0"
