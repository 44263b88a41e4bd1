"""Coalgebra construction of a superintegrable spin-orbit Hamiltonian."""
__version__ = "0.1.0"
