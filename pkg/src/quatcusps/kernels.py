"""Kernel dispatch: the compiled extension when it imports, numpy otherwise.

Set ``QUATCUSPS_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("QUATCUSPS_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels


def primitive_conic_solvable(a: int, b: int, p: int, depth: int) -> bool:
    return bool(_impl.primitive_conic_solvable(a, b, p, depth))


def sl4_det_one_count(q: int, start: int = 0, stop: int = -1) -> int:
    return int(_impl.sl4_det_one_count(q, start, stop))
