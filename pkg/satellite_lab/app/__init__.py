"""Command line application of satellite_lab."""
