"""Kernel backend selection.

The compiled extension is used when it imports; set ``TERMWEAVER_PURE=1`` to
force the pure-Python fallback.
"""

import os

from . import _kernels as python_backend

compiled_backend = None
if not os.environ.get("TERMWEAVER_PURE"):
    try:
        from . import _speedups as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend or python_backend

BACKEND = "cython" if compiled_backend is not None and _active is compiled_backend else "python"

jaro = _active.jaro
jaro_winkler = _active.jaro_winkler
dfa_scan = _active.dfa_scan


def available_backends():
    backends = {"python": python_backend}
    if compiled_backend is not None:
        backends["cython"] = compiled_backend
    return backends
