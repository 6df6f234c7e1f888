"""Selects the counting kernel at import time.

The compiled extension is used when it was built; otherwise the pure-Python
module is used.  Set ``NUMSG_KERNEL=python`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernel

python_kernel = _pykernel

try:
    from . import _ckernel as compiled_kernel
except ImportError:  # extension not built
    compiled_kernel = None

if compiled_kernel is not None and os.environ.get("NUMSG_KERNEL", "").lower() != "python":
    active = compiled_kernel
else:
    active = _pykernel

BACKEND: str = active.BACKEND


def available_backends() -> dict:
    backends = {"python": _pykernel}
    if compiled_kernel is not None:
        backends["cython"] = compiled_kernel
    return backends


def count_subtree(bits, c, m, g, max_genus, chain_only=False, fixed_m=0, backend=None):
    mod = active if backend is None else available_backends()[backend]
    return mod.count_subtree(bits, c, m, g, max_genus, chain_only, fixed_m)
