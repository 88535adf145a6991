"""Kernel backend selection.

The compiled Cython kernels are used when the extension built; otherwise the
pure-Python reference implementations take over.  Set SELFHEAL_PURE_KERNELS=1
to force the fallback (used by the benchmark and the equivalence tests).
"""

import os

if os.environ.get("SELFHEAL_PURE_KERNELS"):
    from . import _pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _speed as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _pure as _impl

        BACKEND = "pure"

reach_count = _impl.reach_count
all_dists = _impl.all_dists
max_stretch = _impl.max_stretch
forest_stats = _impl.forest_stats
flood_adopt = _impl.flood_adopt

__all__ = [
    "BACKEND",
    "reach_count",
    "all_dists",
    "max_stretch",
    "forest_stats",
    "flood_adopt",
]
