"""
Concrete field implementations.

Import these through FieldFactory; direct imports are for type checks.
"""

from arrkit_algebra.core.fields.extension import ExtensionField
from arrkit_algebra.core.fields.number_field import NumberField
from arrkit_algebra.core.fields.prime import PrimeField
from arrkit_algebra.core.fields.rational import RationalField

__all__ = ["ExtensionField", "NumberField", "PrimeField", "RationalField"]
