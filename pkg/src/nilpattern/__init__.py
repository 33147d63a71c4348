"""Pattern algebras, irrationality and factorisation for nilpotent polynomial sequences."""

__version__ = "0.1.0"
