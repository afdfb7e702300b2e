import sys
from pathlib import Path

import pytest

# Root of the arrkit workspace, so tests run without installing the packages first
ROOT_DIR = Path(__file__).parent.parent.absolute()

sys.path.append(str(ROOT_DIR / "packages/arrkit-algebra"))
sys.path.append(str(ROOT_DIR / "packages/arrkit-topology"))
sys.path.append(str(ROOT_DIR / "apps/arrkit-cli/src"))


@pytest.fixture(scope="session")
def project_root():
    return ROOT_DIR


@pytest.fixture(scope="session")
def corpus():
    """Every bundled arrangement file, by name."""
    from arrkit_cli.corpus import bundled_names, load_bundled

    return {name: load_bundled(name) for name in bundled_names()}
