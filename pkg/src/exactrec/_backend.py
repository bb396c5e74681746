"""Selects the compiled kernels when importable, else the numpy fallback.

Set ``EXACTREC_BACKEND=python`` to force the fallback.
"""

import os

from . import _pykernels

python_kernels = _pykernels
compiled_kernels = None

try:
    from . import _kernels as compiled_kernels  # type: ignore[no-redef]
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and os.environ.get("EXACTREC_BACKEND", "").lower() != "python":
    kernels = compiled_kernels
    BACKEND = "cython"
else:
    kernels = _pykernels
    BACKEND = "python"


def available_backends():
    out = {"python": _pykernels}
    if compiled_kernels is not None:
        out["cython"] = compiled_kernels
    return out
