"""
Abstract interfaces for the algebra core.
"""

from arrkit_algebra.core.interfaces.field import FieldInterface, FiniteFieldInterface

__all__ = ["FieldInterface", "FiniteFieldInterface"]
