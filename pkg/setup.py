#!/usr/bin/env python

from setuptools import find_packages, setup

setup(
    name="satellite-lab",
    author="satellite-lab developers",
    description=(
        "CLI and numerical laboratory for multiplier maps, residues and hyperbolic "
        "distances of satellite copies of the Mandelbrot set"
    ),
    license="Apache-2",
    python_requires=">=3.9.0",
    install_requires=[
        "atlas-commons>=0.1.4",
        "click>=7.0",
        "numpy>=1.20.0",
        "pandas>=1.3.0",
        "scipy>=1.12.0",
    ],
    extras_require={
        "tests": [
            "pytest>=4.4.0",
        ],
    },
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    include_package_data=True,
    entry_points={"console_scripts": ["satellite-lab=satellite_lab.app.cli:cli"]},
    use_scm_version={
        "local_scheme": "no-local-version",
        "fallback_version": "0.1.0",
    },
    setup_requires=[
        "setuptools_scm",
    ],
    classifiers=[
        "Development Status :: 2 - Pre-Alpha",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
