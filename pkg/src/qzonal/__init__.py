"""Exact symbolic engine: quantum matrices, quantum-symplectic invariants,
quantum Pfaffians, and Macdonald polynomials."""

__version__ = "0.1.0"
