"""Equivariant Pieri coefficients for the complete flag manifold."""
