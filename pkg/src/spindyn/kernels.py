"""Backend selection for the constant-field stepping kernel.

Prefers the compiled extension; falls back to the pure-Python twin when the
extension is absent or when SPINDYN_FORCE_PYTHON is set in the environment.
`BACKEND` names the one in use.  benchmarks/bench_kernels.py compares them.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SPINDYN_FORCE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND_NAME

integrate_constant = _impl.integrate_constant
