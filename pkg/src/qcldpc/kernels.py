"""Backend selection for the hot loops.

The Cython extension ``qcldpc._ckernels`` is used when it was built; otherwise
the pure-Python module ``qcldpc._pykernels`` takes over.  Setting
``QCLDPC_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

from qcldpc import _pykernels

python_backend = _pykernels
compiled_backend = None

if os.environ.get("QCLDPC_PURE_PYTHON") != "1":
    try:
        from qcldpc import _ckernels as compiled_backend
    except ImportError:  # pragma: no cover - depends on the build
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if backend is compiled_backend else "python"

dlx_solve = backend.dlx_solve
girth_search = backend.girth_search
bp_decode = backend.bp_decode
