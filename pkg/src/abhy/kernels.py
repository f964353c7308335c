"""Kernel selection: the compiled extension if it was built, else pure Python.

Set ``ABHY_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("ABHY_PURE_PYTHON"):
    from abhy._pykernels import bareiss_det, bareiss_rank, bareiss_solve, laurent_mul

    BACKEND = "python"
else:
    try:
        from abhy._ckernels import bareiss_det, bareiss_rank, bareiss_solve, laurent_mul

        BACKEND = "cython"
    except ImportError:
        from abhy._pykernels import bareiss_det, bareiss_rank, bareiss_solve, laurent_mul

        BACKEND = "python"

__all__ = ["BACKEND", "bareiss_det", "bareiss_rank", "bareiss_solve", "laurent_mul"]
