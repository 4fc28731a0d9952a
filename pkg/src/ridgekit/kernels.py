"""Kernel backend selection.

The compiled extension is used when it was built; set
``RIDGEKIT_PURE_PYTHON=1`` to force the Python fallback.
"""
import os

from ridgekit import _pykernels

python_backend = _pykernels

if os.environ.get("RIDGEKIT_PURE_PYTHON"):
    compiled_backend = None
else:
    try:
        from ridgekit import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend or python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

thin = backend.thin
crossing_numbers = backend.crossing_numbers
