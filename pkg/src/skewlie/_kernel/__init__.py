"""Kernel backend selection.

The compiled extension is used when available; the pure Python module
is the fallback.  Set SKEWLIE_BACKEND=python or SKEWLIE_BACKEND=c to
force one side (forcing "c" raises if the extension was not built).
"""

import os

_forced = os.environ.get("SKEWLIE_BACKEND", "").strip().lower()

if _forced == "python":
    from . import _kernel_py as _impl
elif _forced == "c":
    from . import _fastkernel as _impl  # type: ignore[attr-defined]
elif _forced == "":
    try:
        from . import _fastkernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl
else:
    raise RuntimeError(f"SKEWLIE_BACKEND must be 'c' or 'python', got {_forced!r}")

BACKEND_NAME = _impl.BACKEND_NAME
deriv_image = _impl.deriv_image
block_image = _impl.block_image
extraction_scan = _impl.extraction_scan
witness_scan = _impl.witness_scan
agreement_zero_scan = _impl.agreement_zero_scan
