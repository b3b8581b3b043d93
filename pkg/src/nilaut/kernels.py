"""Select the compiled kernels when available, else the Python fallback.

Set ``NILAUT_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("NILAUT_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:
        compiled_backend = None

_active = compiled_backend or python_backend

BACKEND = _active.BACKEND
element_orders = _active.element_orders
closure = _active.closure
enumerate_tuples = _active.enumerate_tuples
extend_hom = _active.extend_hom
