"""Kernel dispatch: compiled extension when available, numpy fallback otherwise.

Set NEARISO_FORCE_FALLBACK=1 to skip the compiled extension (used by the
benchmark and by tests that compare the two implementations).
"""

from __future__ import annotations

import os

from . import _kernels_numpy

if os.environ.get("NEARISO_FORCE_FALLBACK", "") == "1":
    _impl = _kernels_numpy
    IMPLEMENTATION = "numpy"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        IMPLEMENTATION = "compiled"
    except ImportError:
        _impl = _kernels_numpy
        IMPLEMENTATION = "numpy"

max_pair_defect = _impl.max_pair_defect
max_min_distance = _impl.max_min_distance
