"""Tiny JSON disk cache keyed by computation type, parameters and version.

The directory comes from ``DTPT_CACHE_DIR`` (default ``~/.cache/dtpt``).
Unreadable or mismatched records are treated as misses and overwritten, so a
corrupted cache can only cost time, never change a result.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Callable

from ._version import __version__

ENV_VAR = "DTPT_CACHE_DIR"


def cache_dir() -> Path:
    root = os.environ.get(ENV_VAR)
    return Path(root) if root else Path.home() / ".cache" / "dtpt"


def enabled() -> bool:
    return os.environ.get("DTPT_NO_CACHE") != "1"


def _canonical(kind: str, params: dict) -> str:
    return json.dumps({"kind": kind, "params": params}, sort_keys=True, separators=(",", ":"))


def _path(kind: str, params: dict) -> Path:
    digest = hashlib.sha256(_canonical(kind, params).encode()).hexdigest()[:32]
    return cache_dir() / f"{kind}-{digest}.json"


def load(kind: str, params: dict) -> Any | None:
    if not enabled():
        return None
    path = _path(kind, params)
    try:
        record = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if not isinstance(record, dict):
        return None
    if record.get("code_version") != __version__:
        return None
    if record.get("key") != json.loads(_canonical(kind, params)):
        return None
    return record.get("value")


def store(kind: str, params: dict, value: Any) -> None:
    if not enabled():
        return
    path = _path(kind, params)
    record = {
        "key": json.loads(_canonical(kind, params)),
        "value": value,
        "code_version": __version__,
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(record, fh, sort_keys=True)
        os.replace(tmp, path)
    except OSError:
        pass  # a read-only cache is not an error


def cached(kind: str, params: dict, compute: Callable[[], Any],
           validate: Callable[[Any], bool] | None = None) -> Any:
    """Return the cached value for ``(kind, params)`` or compute and store it."""
    value = load(kind, params)
    if value is not None and (validate is None or validate(value)):
        return value
    value = compute()
    store(kind, params, value)
    return value
