"""Betweenness kernel backend selection.

Prefers the compiled Cython extension; falls back to the pure-Python
twin when the extension is missing or COEVONET_PURE=1 is set.
"""

import os

import numpy as np

from . import pure

if os.environ.get("COEVONET_PURE") == "1":
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _cext as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = pure
        BACKEND = "pure"


def edge_betweenness(n, edges):
    """Edge betweenness over unordered pairs; edges is a sequence of (u, v)."""
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    return _impl.edge_betweenness(int(n), arr)
