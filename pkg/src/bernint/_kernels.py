"""Kernel dispatch: compiled extension if present, numpy fallback otherwise.

Set BERNINT_BACKEND=numpy in the environment to force the fallback (used by
the benchmark and the backend-parity tests).  BACKEND records which one won.
"""

import os

BACKEND: str

if os.environ.get("BERNINT_BACKEND") == "numpy":
    from bernint._kernels_py import decasteljau_batch

    BACKEND = "numpy"
else:
    try:
        from bernint._decasteljau import decasteljau_batch

        BACKEND = "cython"
    except ImportError:
        from bernint._kernels_py import decasteljau_batch

        BACKEND = "numpy"

__all__ = ["decasteljau_batch", "BACKEND"]
