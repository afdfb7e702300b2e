"""
Arrkit Algebra - Core Module

This module provides the field infrastructure:
- Abstract interfaces defining the field contract
- A factory building fields from declarative FieldSpec values
- Concrete rational, number, prime and extension fields
"""

from arrkit_algebra.core.factory import (
    FieldFactory,
    FieldKind,
    FieldSpec,
    field_build,
)
from arrkit_algebra.core.interfaces import FieldInterface, FiniteFieldInterface

__all__ = [
    # Interfaces
    "FieldInterface",
    "FiniteFieldInterface",
    # Factory
    "FieldFactory",
    "FieldKind",
    "FieldSpec",
    "field_build",
]
