"""Content addressed storage of intermediate results"""

import hashlib
import json
import shutil
from pathlib import Path
from typing import Callable, Dict, Optional, Text, TypeVar, Union

from semantic_version import SimpleSpec, Version

from twodist._version import __version__
from twodist.system.exceptions import CacheInvalid, VerificationError

__all__ = ["ArtifactCache", "fingerprint"]


def __dir__():
    return __all__


T = TypeVar("T")

MANIFEST = "manifest.json"
CACHE_SCHEMA = "1.0.0"
SUPPORTED_CACHE_SCHEMAS = ">=1.0.0,<2.0.0"


def fingerprint(*parts: Union[bytes, Text]) -> Text:
    """SHA-256 over the given parts, each prefixed by its length"""
    digest = hashlib.sha256()
    for part in parts:
        data = part.encode("utf-8") if isinstance(part, str) else bytes(part)
        digest.update(len(data).to_bytes(8, "big"))
        digest.update(data)
    return digest.hexdigest()


def _file_hash(path: Path) -> Text:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class ArtifactCache:
    """
    Artifacts of every stage live in ``<directory>/<stage>/`` next to a
    manifest holding the fingerprint of the stage inputs and the hash of
    every file. An entry is only reused when the fingerprint matches. Caching
    can be paused, e.g. to force a recomputation:

    .. code-block:: python3

        >>> with cache.pause():
        ...     cache.load("embed", key, read_lattice)  # always None
        >>> cache.load("embed", key, read_lattice)

    Args:
        directory (``Path``): cache root, created if it does not exist.
    """

    def __init__(self, directory: Union[Text, Path]):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._frozen = False

    def __repr__(self):
        return f"ArtifactCache({self.directory})"

    def pause(self) -> "ArtifactCache":
        self._frozen = True
        return self

    def play(self) -> "ArtifactCache":
        self._frozen = False
        return self

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.play()

    def is_on(self) -> bool:
        return not self._frozen

    def _manifest(self, stage: Text) -> Optional[Dict]:
        path = self.directory / str(stage) / MANIFEST
        if not path.is_file():
            return None
        try:
            manifest = json.loads(path.read_text(encoding="utf-8"))
            version = Version(manifest["schema_version"])
        except (ValueError, KeyError) as err:
            raise CacheInvalid(f"Unreadable manifest for stage {stage}: {err}") from err
        if version not in SimpleSpec(SUPPORTED_CACHE_SCHEMAS):
            return None
        return manifest

    def load(self, stage: Text, key: Text, reader: Callable[[Path], T], name: Text = "artifact") -> Optional[T]:
        """
        Read an artifact of ``stage`` if it was stored under ``key``.

        Raises:
            :obj:`~twodist.system.exceptions.CacheInvalid`: if the file does not
              match the hash recorded when it was stored or ``reader`` rejects it.

        Returns:
            the result of ``reader`` or ``None`` on a cache miss.
        """
        if not self.is_on():
            return None
        manifest = self._manifest(stage)
        if manifest is None or manifest.get("key") != key or name not in manifest.get("files", {}):
            return None
        path = self.directory / str(stage) / name
        if not path.is_file() or _file_hash(path) != manifest["files"][name]:
            raise CacheInvalid(f"Cached {name} of stage {stage} does not match its hash.")
        try:
            return reader(path)
        except (ValueError, KeyError, IndexError, VerificationError) as err:
            raise CacheInvalid(f"Cached {name} of stage {stage} cannot be read: {err}") from err

    def store(self, stage: Text, key: Text, writer: Callable[[Path], None], name: Text = "artifact") -> Path:
        """Write an artifact of ``stage`` through ``writer`` and record its hash"""
        folder = self.directory / str(stage)
        manifest = None
        try:
            manifest = self._manifest(stage)
        except CacheInvalid:
            shutil.rmtree(folder)
        if manifest is None or manifest.get("key") != key:
            manifest = {"schema_version": CACHE_SCHEMA, "package": __version__, "key": key, "files": {}}
        folder.mkdir(parents=True, exist_ok=True)
        path = folder / name
        writer(path)
        manifest["files"][name] = _file_hash(path)
        (folder / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True), encoding="utf-8")
        return path

    def invalidate(self, stage: Text) -> None:
        shutil.rmtree(self.directory / str(stage), ignore_errors=True)
