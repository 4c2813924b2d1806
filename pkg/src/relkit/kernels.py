"""Kernel backend selection.

The compiled extension is used when it imports; setting ``RELKIT_PURE=1``
forces the pure-Python fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("RELKIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _pykernels

byte_tables = _impl.byte_tables
mask_image = _impl.mask_image
mask_orbit = _impl.mask_orbit
orbit_scan = _impl.orbit_scan
sym_scan = _impl.sym_scan

__all__ = ["BACKEND", "byte_tables", "mask_image", "mask_orbit", "orbit_scan", "sym_scan"]
