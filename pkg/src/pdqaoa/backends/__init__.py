"""Kernel backend selection.

The compiled Cython core is preferred when importable; otherwise the numpy
fallback is used.  ``PDQAOA_BACKEND=python`` forces the fallback and
``PDQAOA_BACKEND=compiled`` makes a missing extension a hard error.
"""

from __future__ import annotations

import os

from . import numpy_backend

_requested = os.environ.get("PDQAOA_BACKEND", "auto").lower()

if _requested in ("python", "numpy"):
    kernels = numpy_backend
elif _requested in ("auto", "compiled", "cython"):
    try:
        from . import _core as kernels  # type: ignore[no-redef]
    except ImportError:
        if _requested != "auto":
            raise
        kernels = numpy_backend
else:
    raise ValueError(f"unknown PDQAOA_BACKEND={_requested!r}; use auto, python, or compiled")


def backend_name() -> str:
    return "python" if kernels is numpy_backend else "compiled"
