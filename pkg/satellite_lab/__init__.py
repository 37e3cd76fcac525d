"""
Numerical laboratory for satellite copies of the Mandelbrot set in the logistic family
"""
from satellite_lab.version import VERSION as __version__  # pylint: disable=W0611
