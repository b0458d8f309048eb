"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; the pure
Python twin is the fallback. HECKERPF_BACKEND=pure|compiled forces a
choice (useful for benchmarking and debugging).
"""

import os


def _load():
    choice = os.environ.get("HECKERPF_BACKEND", "").strip().lower()
    if choice in ("pure", "python"):
        from . import _kernel

        return _kernel
    if choice in ("c", "compiled", "cython"):
        from . import _ckernel

        return _ckernel
    if choice:
        raise ValueError(f"unknown HECKERPF_BACKEND value: {choice!r}")
    try:
        from . import _ckernel

        return _ckernel
    except ImportError:
        from . import _kernel

        return _kernel


kernel = _load()


def active_backend():
    """Name of the kernel in use: 'compiled' or 'pure'."""
    return "compiled" if kernel.__name__.endswith("_ckernel") else "pure"
