"""Raster images of the connectedness locus."""
