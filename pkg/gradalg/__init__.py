"""
gradalg - Exact computations for division algebras graded by a finite group
"""

__version__ = "1.0.0"
__author__ = "gradalg developers"
