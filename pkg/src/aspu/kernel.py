"""Selects the compiled G3 kernel when it is importable.

Set ``ASPU_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernel_py

if os.environ.get("ASPU_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl
    except ImportError:  # extension not built
        _impl = _kernel_py

find_models = _impl.find_models
IMPLEMENTATION = _impl.IMPLEMENTATION
