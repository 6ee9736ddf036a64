"""Small JSON disk cache for exact results.

One file per (lattice, kind, key). Entries carry a schema version; stale,
unreadable or mismatched entries are treated as misses and overwritten.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Optional

SCHEMA_VERSION = 1
ENV_VAR = "ISINGX_CACHE_DIR"


def cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(Path.home(), ".cache")
    return Path(base) / "isingx"


def _path(lattice: str, kind: str, key: str) -> Path:
    safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in f"{lattice}-{kind}-{key}")
    digest = hashlib.sha1(f"{lattice}\0{kind}\0{key}".encode()).hexdigest()[:8]
    return cache_dir() / f"{safe}-{digest}.json"


def load(lattice: str, kind: str, key: str) -> Optional[Any]:
    try:
        with open(_path(lattice, kind, key), encoding="utf-8") as fh:
            entry = json.load(fh)
    except (OSError, ValueError):
        return None
    if not isinstance(entry, dict) or entry.get("schema") != SCHEMA_VERSION:
        return None
    if (entry.get("lattice"), entry.get("kind"), entry.get("key")) != (lattice, kind, key):
        return None
    return entry.get("payload")


def store(lattice: str, kind: str, key: str, payload: Any) -> None:
    """Write atomically; failures to write are silently ignored."""
    path = _path(lattice, kind, key)
    entry = {"schema": SCHEMA_VERSION, "lattice": lattice, "kind": kind,
             "key": key, "payload": payload}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(entry, fh, sort_keys=True)
        os.replace(tmp, path)
    except OSError:
        pass
