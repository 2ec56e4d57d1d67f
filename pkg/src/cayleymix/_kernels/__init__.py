"""Kernel selection: compiled extension when importable, numpy fallback
otherwise.  Set CAYLEYMIX_FORCE_PY=1 to force the fallback."""

import os

from . import fallback

if os.environ.get("CAYLEYMIX_FORCE_PY"):
    _impl = fallback
    HAVE_EXT = False
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        HAVE_EXT = True
    except ImportError:
        _impl = fallback
        HAVE_EXT = False

bfs_distances = _impl.bfs_distances

__all__ = ["bfs_distances", "HAVE_EXT", "fallback"]
