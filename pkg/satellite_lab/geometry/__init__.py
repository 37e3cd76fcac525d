"""Hyperbolic and Teichmueller geometry of the right half-plane."""
