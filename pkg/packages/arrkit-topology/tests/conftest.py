import sys
from pathlib import Path

import pytest

# make both workspace packages importable without installing them first
PACKAGE_DIR = Path(__file__).parent.parent.absolute()
sys.path.append(str(PACKAGE_DIR))
sys.path.append(str(PACKAGE_DIR.parent / "arrkit-algebra"))

BRAID_FORMS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)]
X3_FORMS = [(1, 0, -1), (0, 1, 1), (0, 0, 1), (2, 1, 0), (1, 0, 0), (0, 1, 0)]
NON_FANO_FORMS = [(0, 0, 1), (1, 0, 0), (0, 1, -1), (1, -1, 0), (1, 0, -1), (0, 1, 0), (1, 1, -1)]
# affine: a triple point at the origin and line 3 crossing the others
TOY_FORMS = [(1, 1, 0), (0, 1, 0), (-1, 2, 1), (-1, 1, 0)]


@pytest.fixture(scope="session")
def braid():
    from arrkit_topology import Arrangement

    return Arrangement.from_coefficients("braid", BRAID_FORMS)


@pytest.fixture(scope="session")
def x3():
    from arrkit_topology import Arrangement

    return Arrangement.from_coefficients("X3", X3_FORMS)


@pytest.fixture(scope="session")
def non_fano():
    from arrkit_topology import Arrangement

    return Arrangement.from_coefficients("non-Fano", NON_FANO_FORMS)


@pytest.fixture(scope="session")
def toy():
    from arrkit_topology import Arrangement

    return Arrangement.from_coefficients("toy", TOY_FORMS, ambient_dim=2)


@pytest.fixture(scope="session")
def pencil():
    """Factory: n lines through (0:0:1)."""
    from arrkit_topology import Arrangement

    def build(n: int):
        return Arrangement.from_coefficients(f"pencil{n}", [(1, k, 0) for k in range(n)])

    return build


@pytest.fixture(scope="session")
def braid_group(braid):
    from arrkit_topology import arrangement_group

    return arrangement_group(braid)


@pytest.fixture(scope="session")
def braid_matrix(braid_group):
    from arrkit_topology import alexander_matrix

    return alexander_matrix(braid_group.presentation)


@pytest.fixture(scope="session")
def toy_group(toy):
    from arrkit_topology import arrangement_group

    return arrangement_group(toy)
