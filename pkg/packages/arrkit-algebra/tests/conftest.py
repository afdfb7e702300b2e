import sys
from pathlib import Path

import pytest

# make the package importable without installing the workspace first
PACKAGE_DIR = Path(__file__).parent.parent.absolute()
sys.path.append(str(PACKAGE_DIR))


@pytest.fixture(scope="session")
def f4():
    """F_4 = F_2[x]/(x^2 + x + 1)"""
    from arrkit_algebra import FieldSpec, field_build

    return field_build(FieldSpec.extension(2, 2, (1, 1, 1)))


@pytest.fixture(scope="session")
def f7():
    from arrkit_algebra import FieldSpec, field_build

    return field_build(FieldSpec.prime(7))
