"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``TURANLAB_PURE_PYTHON`` is set to a non-empty value,
the pure-Python implementation is used.  Both expose the same functions.
"""

from __future__ import annotations

import os

from turanlab import _pykernels

if os.environ.get("TURANLAB_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from turanlab import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

canonical_labeling = _impl.canonical_labeling
count_cycles = _impl.count_cycles
has_cycle = _impl.has_cycle
has_cycle_through = _impl.has_cycle_through


def available_backends() -> dict[str, object]:
    """Map of backend name to kernel module, for benchmarks and parity tests."""
    out: dict[str, object] = {"python": _pykernels}
    try:
        from turanlab import _ckernels
    except ImportError:
        return out
    out["cython"] = _ckernels
    return out
