"""Kernel backend selection.

The compiled extension (`herext._ckernel`) is preferred when importable; the
pure-Python module (`herext._kernel`) is the fallback.  Set HEREXT_KERNEL to
``python`` or ``c`` to force a backend; the default is ``auto``.
"""

from __future__ import annotations

import os

_choice = os.environ.get("HEREXT_KERNEL", "auto")
if _choice == "python":
    from herext import _kernel as _impl
elif _choice == "c":
    from herext import _ckernel as _impl  # type: ignore[no-redef]
elif _choice == "auto":
    try:
        from herext import _ckernel as _impl  # type: ignore[no-redef]
    except ImportError:
        from herext import _kernel as _impl  # type: ignore[no-redef]
else:
    raise RuntimeError(f"HEREXT_KERNEL must be 'auto', 'python' or 'c', got {_choice!r}")

BACKEND: str = _impl.BACKEND

canonical_rows = _impl.canonical_rows
contains_induced = _impl.contains_induced
max_clique = _impl.max_clique
ascent = _impl.ascent
power_iteration = _impl.power_iteration
