"""Hot-loop kernels, compiled when available.

Set ``DKSYNTH_PURE_PYTHON=1`` to force the pure-Python implementations.
"""

import os

from . import _kernels_py

if os.environ.get("DKSYNTH_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

fwht_mod = _impl.fwht_mod
run_circuit_all = _impl.run_circuit_all
fold_cascade_all = _impl.fold_cascade_all

__all__ = ["BACKEND", "fwht_mod", "run_circuit_all", "fold_cascade_all"]
