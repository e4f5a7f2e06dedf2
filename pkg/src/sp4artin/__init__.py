"""Exact finite-level verification of the ingredients of Artin's conjecture for
4-dimensional symplectic representations with projective image E_2^4 : C_5."""

__version__ = "0.1.0"
