"""Hecke-deformed discrete Fourier transform.

Exact double affine Hecke algebra arithmetic of type A1 at q = 1, its two
representations on functions over the integers, the intertwiner between
them, and the resulting (M+1)-point deformed cosine transform with its
Bethe-Ansatz spectrum.
"""
from .spectral import SpectralPoint, SpectrumTable, solve_bethe_root, spectrum
from .transform import DeformedFourierTransform, KernelMatrix, build_kernel, forward, inverse
from .weyl import LatticeConfig, WeylElement

__all__ = [
    "LatticeConfig",
    "WeylElement",
    "SpectralPoint",
    "SpectrumTable",
    "KernelMatrix",
    "DeformedFourierTransform",
    "solve_bethe_root",
    "spectrum",
    "build_kernel",
    "forward",
    "inverse",
]

__version__ = "0.1.0"
