"""Exact computational engine for partial (co)actions of multiplier
Hopf algebras: instances, axiom verification, duality, smash products,
Morita contexts and partial Galois maps."""

__version__ = "0.1.0"
