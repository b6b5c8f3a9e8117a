"""Digest-keyed text cache for expensive exact series.

Cache entries are canonical textual renderings in digest-named files; the
digest covers the convention-version tag and the full request key, so any
change of conventions or window policy invalidates old entries instead of
silently reusing them.  The cache directory comes from set_cache_dir (the
command line) or the VWNEK_CACHE_DIR environment variable; with neither set,
caching is a no-op.
"""

from __future__ import annotations

import hashlib
import os
import sys
import tempfile
from pathlib import Path

from . import CONVENTION_VERSION
from .useries import ULaurentSeries


class SeriesCache:
    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None
        if self.root is not None:
            try:
                self.root.mkdir(parents=True, exist_ok=True)
            except OSError as err:
                self._disable(err)

    def _disable(self, err: OSError) -> None:
        print(f"warning: cache disabled ({err})", file=sys.stderr)
        self.root = None

    def _path(self, key: tuple) -> Path | None:
        if self.root is None:
            return None
        digest = hashlib.sha256(f"{CONVENTION_VERSION}|{key!r}".encode()).hexdigest()[:40]
        return self.root / f"{digest}.txt"

    # ------------------------------------------------------------------

    def get_text(self, key: tuple) -> str | None:
        path = self._path(key)
        if path is None or not path.exists():
            return None
        try:
            lines = path.read_text().splitlines()
        except OSError as err:
            self._disable(err)
            return None
        if not lines or lines[0] != f"# {key!r}":
            return None  # digest collision or stale format; recompute
        return "\n".join(lines[1:])

    def put_text(self, key: tuple, text: str) -> None:
        path = self._path(key)
        if path is None:
            return
        payload = f"# {key!r}\n{text}"
        try:
            fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as fh:
                    fh.write(payload)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as err:
            self._disable(err)

    # ------------------------------------------------------------------

    def get_ulaurent(self, key: tuple) -> ULaurentSeries | None:
        text = self.get_text(key)
        if text is None:
            return None
        try:
            return ULaurentSeries.parse(text)
        except (ValueError, KeyError):
            return None  # corrupt entry behaves as a miss

    def put_ulaurent(self, key: tuple, series: ULaurentSeries) -> None:
        self.put_text(key, series.render())

    def get_qseries(self, key: tuple):
        text = self.get_text(key)
        if text is None:
            return None
        from .qseries import QSeries

        try:
            return QSeries.parse(text)
        except (ValueError, KeyError):
            return None  # corrupt entry behaves as a miss

    def put_qseries(self, key: tuple, series) -> None:
        self.put_text(key, series.render())


_ACTIVE = SeriesCache(os.environ.get("VWNEK_CACHE_DIR"))


def active_cache() -> SeriesCache:
    return _ACTIVE


def set_cache_dir(path: str | os.PathLike | None) -> None:
    global _ACTIVE
    _ACTIVE = SeriesCache(path)
