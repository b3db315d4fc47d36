"""
Backend selection for the sparse-polynomial kernels.

The compiled extension is used when it imports; set ``EQPIERI_PURE_PYTHON=1``
to force the pure-Python fallback. Both expose ``KPoly`` with the same API.
"""

import os

from . import _pykernels
from ._pykernels import KPoly as PyKPoly

try:
    if os.environ.get("EQPIERI_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels
    from ._ckernels import KPoly as CKPoly
except ImportError:
    _ckernels = None
    CKPoly = None

KPoly = CKPoly if CKPoly is not None else PyKPoly
BACKEND = "compiled" if CKPoly is not None else "python"


def backends() -> dict:
    """Every available kernel class, keyed by name."""
    found = {"python": PyKPoly}
    if CKPoly is not None:
        found["compiled"] = CKPoly
    return found


def max_slots(kpoly_cls) -> int:
    if kpoly_cls is CKPoly:
        return _ckernels.MAX_SLOTS
    return 1 << 30


__all__ = ["KPoly", "CKPoly", "PyKPoly", "BACKEND", "backends", "max_slots", "_pykernels"]
