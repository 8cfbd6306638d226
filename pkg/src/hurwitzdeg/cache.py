"""Content-addressed cache for CLI results.

An entry is keyed by the sha256 of the canonical input text together
with the verb (and its flags), the enumeration ceilings, and the engine
version, so a different portrait, verb, ceiling or version can never
replay a stale entry.  Entries carry a checksum of their payload and a
corrupt entry is evicted and recomputed; writes go through a temporary
file and an atomic rename so concurrent runs never observe a partial
entry.
"""

import hashlib
import json
import logging
import os
import tempfile

from . import __version__

log = logging.getLogger(__name__)


def cache_key(canonical_text: str, verb_tag: str, ceilings) -> str:
    blob = "\x00".join([
        __version__,
        verb_tag,
        f"{ceilings.max_degree},{ceilings.max_classes},{ceilings.max_nodes}",
        canonical_text,
    ])
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _checksum(payload) -> str:
    body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode("utf-8")).hexdigest()


def load(cache_dir: str, key: str):
    """The stored payload, or None; a corrupt entry is evicted and logged."""
    path = os.path.join(cache_dir, key + ".json")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            entry = json.load(fh)
        if entry["checksum"] != _checksum(entry["payload"]):
            raise ValueError("checksum mismatch")
        return entry["payload"]
    except FileNotFoundError:
        return None
    except (ValueError, KeyError, json.JSONDecodeError):
        log.warning("evicting corrupt cache entry %s", path)
        try:
            os.remove(path)
        except OSError:
            pass
        return None


def store(cache_dir: str, key: str, payload) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    entry = {"checksum": _checksum(payload), "payload": payload}
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(entry, fh)
        os.replace(tmp, os.path.join(cache_dir, key + ".json"))
    except BaseException:
        try:
            os.remove(tmp)
        except OSError:
            pass
        raise
