"""Asymptotic experiments on satellite copies."""
