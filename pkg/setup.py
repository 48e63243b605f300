#!/usr/bin/env python3
"""
Setup script for gradalg
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as fh:
    requirements = [line.strip() for line in fh if line.strip() and not line.startswith("#")]

# test tooling stays out of the runtime requirements
runtime = [r for r in requirements if not r.lower().startswith(("pytest", "hypothesis"))]
testing = [r for r in requirements if r.lower().startswith(("pytest", "hypothesis"))]

setup(
    name="gradalg",
    version="1.0.0",
    author="gradalg developers",
    description="gradalg - Exact computations for division algebras graded by a finite group",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["examples", "examples.*"]),
    package_data={
        "gradalg": ["schemas/*.json", "golden/*.yml"],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=runtime,
    extras_require={"test": testing},
    entry_points={
        "console_scripts": [
            "gradalg=gradalg.cli:main",
        ],
    },
)
