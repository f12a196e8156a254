"""Select the compiled kernels when available, else the numpy fallback.

Set ``STABINV_BACKEND=python`` to force the fallback.
"""

import os

from . import _fallback


def _load_compiled():
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


def get_kernels(name=None):
    """Return a kernel module by name: ``"compiled"``, ``"python"`` or ``None`` for the default."""
    if name is None:
        name = os.environ.get("STABINV_BACKEND", "auto")
    if name == "python":
        return _fallback
    mod = _load_compiled()
    if mod is None:
        if name == "compiled":
            raise ImportError("compiled kernels are not built; reinstall with Cython available")
        return _fallback
    return mod


kernels = get_kernels()
BACKEND = kernels.NAME
