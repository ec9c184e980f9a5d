"""Kernel backend selection.

The hot loops (block sieving, joint counting, square-divisor corrections)
exist twice: as typed Cython loops in `_sievecore` and as vectorized numpy
code in `pykernels`.  The compiled backend is preferred when built; the
environment variable SQF_KERNELS selects one explicitly:

    SQF_KERNELS=py   force the numpy backend
    SQF_KERNELS=cy   require the compiled backend (ImportError if missing)

Both backends return bit-identical arrays, so everything downstream is
reproducible regardless of which one is active.
"""
from __future__ import annotations

import os

from . import pykernels

_FORCED = os.environ.get("SQF_KERNELS", "").strip().lower()

_compiled = None
if _FORCED not in ("py", "numpy", "python"):
    try:
        from . import _sievecore as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None
        if _FORCED in ("cy", "cython", "compiled"):
            raise ImportError(
                "SQF_KERNELS requested the compiled backend but "
                "squarefree._kernels._sievecore is not built"
            )

if _compiled is not None:
    BACKEND = "cython"
    _impl = _compiled
else:
    BACKEND = "numpy"
    _impl = pykernels

squarefree_block = _impl.squarefree_block
mobius_block = _impl.mobius_block
count_joint = _impl.count_joint
pair_correction_block = _impl.pair_correction_block
square_radical_block = _impl.square_radical_block
