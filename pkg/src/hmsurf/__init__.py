"""Numerical invariants of the Hilbert modular surfaces Z(N,r) and W(N,r)."""

from .surface_invariants import (DataError, EKClass, InvariantRow, Level, base_data, classify_W,
                                 classify_Z, invariant_row, k_small_squared, kw_squared, pg_W)

__all__ = ["DataError", "EKClass", "InvariantRow", "Level", "base_data", "classify_W",
           "classify_Z", "invariant_row", "k_small_squared", "kw_squared", "pg_W"]
__version__ = "0.1.0"
