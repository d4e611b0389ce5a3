"""Backend selection for the modular row-reduction kernel.

The compiled extension is used when importable; otherwise (or when the
environment variable ``COCHAR_PURE_PYTHON`` is set to a non-empty value)
the pure-Python implementation is used. ``BACKEND`` names the active one.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("COCHAR_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

rref_mod = _impl.rref_mod
rank_mod = _impl.rank_mod

__all__ = ["BACKEND", "rref_mod", "rank_mod"]
