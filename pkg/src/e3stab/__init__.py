"""Lattice, trilinear-form and central-charge computations for the abelian threefold E x E x E."""

__version__ = "0.1.0"
