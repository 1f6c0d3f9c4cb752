"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
reference kernels are used.  Setting ``KLMEDIAN_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _pykernels

if os.environ.get("KLMEDIAN_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND
frechet = _impl.frechet
distance_matrix = _impl.distance_matrix
assignment_dp = _impl.assignment_dp
profile_array = _impl.profile_array
profile_equals = _impl.profile_equals
search_length = _impl.search_length

__all__ = [
    "BACKEND",
    "frechet",
    "distance_matrix",
    "assignment_dp",
    "profile_array",
    "profile_equals",
    "search_length",
]
