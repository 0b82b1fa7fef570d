"""Exact-arithmetic Lagrangian Grassmannian, hyperdeterminant and CKP tau-function toolkit."""

__version__ = "0.1.0"
