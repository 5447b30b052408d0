"""Arithmetic invariants of ax+b-semigroup C*-algebras over rings of integers."""

__version__ = "0.1.0"
