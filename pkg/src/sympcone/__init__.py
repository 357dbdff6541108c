"""Exact symplectic linear algebra: nilpotent cones, isotropic flags and
spectral-curve discriminants over Q."""

__version__ = "0.1.0"
