"""Kernel selection.

The compiled GMP kernels are used when the extension was built; otherwise the
pure-Python kernels. Setting ``HYPERDET_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("HYPERDET_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

bareiss_det = _impl.bareiss_det
det_mod_p = _impl.det_mod_p


def available_backends() -> dict[str, object]:
    """Map of backend name to kernel module, for tests and benchmarks."""
    found: dict[str, object] = {"python": _kernels_py}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found["compiled"] = _kernels
    return found
