import json
import sys
from pathlib import Path

import pytest

# src/ and the workspace packages, for runs without an installed environment
SRC_DIR = Path(__file__).parent.parent.parent.absolute()
WORKSPACE = SRC_DIR.parent.parent.parent
sys.path.append(str(SRC_DIR))
sys.path.append(str(WORKSPACE / "packages" / "arrkit-algebra"))
sys.path.append(str(WORKSPACE / "packages" / "arrkit-topology"))


@pytest.fixture
def write_arrangement(tmp_path):
    """Factory: dump an arrangement-file dict to tmp_path and return its path."""

    def write(payload, name: str = "arrangement.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return write


@pytest.fixture
def two_lines(write_arrangement):
    return write_arrangement({"schema_version": 1, "name": "two lines", "ambient_dim": 2, "forms": [[1, 0, 0], [0, 1, 0]]})


@pytest.fixture
def run(capsys, tmp_path):
    """Run the CLI with a private cache; returns (exit status, parsed stdout or raw text)."""
    from arrkit_cli.commands import main

    def invoke(*argv, parse: bool = True):
        status = main([*argv, "--cache-dir", str(tmp_path / "cache")])
        out = capsys.readouterr().out
        return status, (json.loads(out) if parse else out)

    return invoke
