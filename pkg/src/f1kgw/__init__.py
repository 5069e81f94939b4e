"""Exact-category computations for finite pointed sets with partial
injections: axiom certification, symmetric forms, span categories, and
the K0/GW0/Witt invariants, all by exhaustive desk-scale enumeration."""

from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
