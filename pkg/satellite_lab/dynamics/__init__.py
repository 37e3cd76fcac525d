"""Dynamics of the logistic family: orbits, cycles and fixed point invariants."""
