"""
On-disk results cache.

Each entry is a folder named `<polytope>_<subcommand>_<hash>` holding metadata.json
and result.json. The hash covers the polytope document, the subcommand and the
canonical JSON of the parameters. Files are written to a temporary name and
renamed into place, so concurrent writers of the same key end with one complete
entry (last write wins).
"""
from __future__ import annotations

import hashlib
import json
import os
import shutil
import tempfile
import time
from pathlib import Path
from typing import Dict, Iterator, Optional

from ._type_check import typecheck_methods


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(',', ':'))


@typecheck_methods
class CacheKey:
    """Identifies a result by polytope content, subcommand and parameters."""

    def __init__(self, polytope_id: str, polytope_bytes: bytes, subcommand: str, params: Dict):
        self._polytope_id = polytope_id
        self._subcommand = subcommand
        self._params = dict(params)

        digest = hashlib.blake2b(digest_size=8)
        digest.update(polytope_bytes)
        digest.update(f"::{subcommand}::{canonical_json(self._params)}".encode('utf-8'))
        self._hash = digest.hexdigest()

        sanitized = "".join(c if c.isalnum() or c in "-." else "_" for c in polytope_id) or "polytope"
        self._folder_name = f"{sanitized}_{subcommand}_{self._hash}"

    @property
    def polytope_id(self) -> str:
        return self._polytope_id

    @property
    def subcommand(self) -> str:
        return self._subcommand

    @property
    def params(self) -> Dict:
        return dict(self._params)

    @property
    def key(self) -> str:
        return self._hash

    @property
    def folder_name(self) -> str:
        return self._folder_name


@typecheck_methods
class CacheMetadata:
    """Contents of metadata.json."""

    def __init__(self, cache_key: str, polytope_id: str, subcommand: str, params: Dict, created: float):
        self.cache_key = cache_key
        self.polytope_id = polytope_id
        self.subcommand = subcommand
        self.params = params
        self.created = created

    @classmethod
    def from_dict(cls, data: Dict) -> 'CacheMetadata':
        return cls(
            cache_key=data["cache_key"],
            polytope_id=data["polytope_id"],
            subcommand=data["subcommand"],
            params=data["params"],
            created=float(data["created"]),
        )

    def to_dict(self) -> Dict:
        return {
            "cache_key": self.cache_key,
            "polytope_id": self.polytope_id,
            "subcommand": self.subcommand,
            "params": self.params,
            "created": self.created,
        }

    @classmethod
    def from_file(cls, metadata_file: Path) -> 'CacheMetadata':
        with open(metadata_file, 'r', encoding="utf-8") as f:
            return cls.from_dict(json.load(f))


def _write_atomic(path: Path, data: Dict):
    """Write JSON to a sibling temp file, then rename over path."""
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, 'w', encoding="utf-8") as f:
            json.dump(data, f, indent=2)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


@typecheck_methods
class ResultCache:
    """Stores JSON results keyed by CacheKey."""

    def __init__(self, cache_dir: Path):
        self.cache_dir = cache_dir
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def entry_dir(self, cache_key: CacheKey) -> Path:
        return self.cache_dir / cache_key.folder_name

    def lookup(self, cache_key: CacheKey) -> Optional[Dict]:
        """Cached result for the key, or None when missing or unreadable."""
        folder = self.entry_dir(cache_key)
        try:
            metadata = CacheMetadata.from_file(folder / "metadata.json")
            if metadata.cache_key != cache_key.key:
                return None
            with open(folder / "result.json", 'r', encoding="utf-8") as f:
                return json.load(f)
        except (OSError, ValueError, KeyError):
            return None

    def store(self, cache_key: CacheKey, result: Dict) -> Path:
        """Write result.json first and metadata.json last; an entry without metadata is a miss."""
        folder = self.entry_dir(cache_key)
        folder.mkdir(parents=True, exist_ok=True)
        _write_atomic(folder / "result.json", result)
        metadata = CacheMetadata(cache_key.key, cache_key.polytope_id, cache_key.subcommand,
                                 cache_key.params, time.time())
        _write_atomic(folder / "metadata.json", metadata.to_dict())
        return folder

    def discard(self, cache_key: CacheKey):
        shutil.rmtree(self.entry_dir(cache_key), ignore_errors=True)

    def entries(self) -> Iterator[CacheMetadata]:
        """Metadata of every readable entry; corrupted folders are skipped."""
        if not self.cache_dir.exists():
            return
        for folder in sorted(self.cache_dir.iterdir()):
            metadata_file = folder / "metadata.json"
            if not folder.is_dir() or not metadata_file.exists():
                continue
            try:
                yield CacheMetadata.from_file(metadata_file)
            except (OSError, ValueError, KeyError):
                continue

    def clear(self):
        """Delete every entry."""
        if self.cache_dir.exists():
            shutil.rmtree(self.cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
