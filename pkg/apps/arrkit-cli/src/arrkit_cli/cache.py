"""
On-disk JSON result cache keyed by arrangement content, operation and parameters.
"""

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from arrkit_topology import Arrangement, __version__ as TOPOLOGY_VERSION

logger = logging.getLogger(__name__)


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def cache_key(arr: Arrangement, operation: str, params: Dict[str, Any], version: str = TOPOLOGY_VERSION) -> str:
    payload = {"arrangement": arr.fingerprint(), "operation": operation, "params": params, "version": version}
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


class ResultCache:
    """
    Stores one JSON file per key under root/<key[:2]>/<key>.json.

    A disabled cache (root None) computes every time.
    """

    def __init__(self, root: Optional[Path], version: str = TOPOLOGY_VERSION):
        self.root = Path(root).expanduser() if root is not None else None
        self.version = version
        self.hits = 0
        self.misses = 0

    def key(self, arr: Arrangement, operation: str, params: Dict[str, Any]) -> str:
        return cache_key(arr, operation, params, self.version)

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def lookup(self, key: str) -> Optional[Any]:
        if self.root is None:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as e:
            logger.warning(f"Discarding corrupt cache entry {path.name}: {e}")
            path.unlink(missing_ok=True)
            return None

    def store(self, key: str, value: Any) -> None:
        if self.root is None:
            return
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        with open(tmp, "w", encoding="utf-8") as f:
            f.write(canonical_json(value))
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)

    def get_or_compute(
        self, arr: Arrangement, operation: str, params: Dict[str, Any], compute: Callable[[], Any]
    ) -> Any:
        """Cached JSON result of compute(); compute must return JSON-serializable data."""
        key = self.key(arr, operation, params)
        cached = self.lookup(key)
        if cached is not None:
            self.hits += 1
            logger.info(f"cache hit: {operation} {params} for {arr.name}")
            return cached
        self.misses += 1
        value = compute()
        # normalize through JSON so hits and misses return identical data
        value = json.loads(canonical_json(value))
        self.store(key, value)
        return value
