"""Kernel backend selection.

The environment variable PQMLAB_KERNELS picks the implementation:

    auto   (default) numba when importable, else pure numpy
    numba  require the jitted kernels, fail loudly if numba is missing
    numpy  force the pure-numpy fallback

Both backends expose the same in-place functions; see numpy_backend for the
reference semantics.
"""

from __future__ import annotations

import os

from . import numpy_backend

_REQUESTED = os.environ.get("PQMLAB_KERNELS", "auto").strip().lower()

if _REQUESTED not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"PQMLAB_KERNELS must be 'auto', 'numba' or 'numpy', got {_REQUESTED!r}"
    )

if _REQUESTED == "numpy":
    _backend = numpy_backend
else:
    try:
        from . import numba_backend as _backend
    except ImportError:
        if _REQUESTED == "numba":
            raise
        _backend = numpy_backend

BACKEND = _backend.NAME

apply_x = _backend.apply_x
apply_h = _backend.apply_h
apply_mcx = _backend.apply_mcx
apply_phase0 = _backend.apply_phase0
apply_cphase0 = _backend.apply_cphase0
apply_cs = _backend.apply_cs
prob_one = _backend.prob_one
collapse = _backend.collapse
