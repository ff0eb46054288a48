"""Rank-2 Drinfeld modules over F_q[t]: Frobenius data, Galois-image certificates and tools."""

__version__ = "0.1.0"
