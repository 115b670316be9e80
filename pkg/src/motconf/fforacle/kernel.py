"""Backend selection for the finite-field kernels.

The compiled extension is used when it was built; setting
``MOTCONF_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

from __future__ import annotations

import os

if os.environ.get("MOTCONF_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernel_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernel as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _kernel_py as _impl

        BACKEND = "python"

build_tables = _impl.build_tables
element_degrees = _impl.element_degrees
degree_histogram = _impl.degree_histogram
scan_system = _impl.scan_system

__all__ = ["BACKEND", "build_tables", "element_degrees", "degree_histogram", "scan_system"]
