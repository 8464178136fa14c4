"""Best-effort disk cache for computed bases and eigen systems.

Entries are canonical JSON files keyed by their parameters and the tool
version; corruption or a version mismatch simply triggers recomputation.
Writes are atomic (temp file + rename), so concurrent scans may share a
cache directory: any writer of a key produces identical bytes.
"""

import json
import os
import tempfile

from . import TOOL_VERSION


class DiskCache:
    def __init__(self, root):
        self.root = str(root)

    def _path(self, namespace, key):
        name = "_".join(str(part) for part in key) + ".json"
        return os.path.join(self.root, namespace, name)

    def get(self, namespace, key):
        try:
            with open(self._path(namespace, key), "r", encoding="ascii") as fh:
                doc = json.load(fh)
            if doc.get("toolversion") != TOOL_VERSION:
                return None
            if doc.get("key") != list(key):
                return None
            return doc["value"]
        except (OSError, ValueError, KeyError):
            return None

    def put(self, namespace, key, value):
        doc = {"toolversion": TOOL_VERSION, "key": list(key), "value": value}
        path = self._path(namespace, key)
        try:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp, path)
        except OSError:
            pass


_UNSET = object()
_active = _UNSET


def get_cache():
    """The active cache: WZ_CACHE_DIR if set, else the user cache directory."""
    global _active
    if _active is _UNSET:
        root = os.environ.get("WZ_CACHE_DIR")
        if not root:
            base = os.environ.get("XDG_CACHE_HOME") or os.path.join(
                os.path.expanduser("~"), ".cache")
            root = os.path.join(base, "wzcert")
        _active = DiskCache(root) if root else None
    return _active


def set_cache(cache):
    """Install a specific DiskCache (or None to disable)."""
    global _active
    _active = cache


def reset_cache():
    """Forget the active cache so the next access re-reads the environment."""
    global _active
    _active = _UNSET
