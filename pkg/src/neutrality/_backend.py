"""Kernel backend selection.

Imports the compiled kernel when available, otherwise the pure-Python one.
Set NEUTRALITY_PURE=1 to force the pure backend (used by the benchmark and
for debugging).
"""

import os

if os.environ.get("NEUTRALITY_PURE"):
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as kernel

conv_reduce = kernel.conv_reduce
scaled_accumulate = kernel.scaled_accumulate
BACKEND = kernel.BACKEND
