"""Search kernel selection.

The compiled kernel is used when it was built; ``GYROLAB_PURE_PYTHON=1``
forces the Python fallback. Both kernels are interchangeable bit for bit.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    if os.environ.get("GYROLAB_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernel
except ImportError:
    _ckernel = None

KERNELS = {"python": _pykernel.search_subtree}
if _ckernel is not None:
    KERNELS["cython"] = _ckernel.search_subtree

DEFAULT_KERNEL = "cython" if _ckernel is not None else "python"

expand_prefix = _pykernel.expand_prefix


def get_kernel(name: str | None = None):
    name = name or DEFAULT_KERNEL
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"kernel {name!r} unavailable; have {sorted(KERNELS)}") from None
