"""Kernel backend selection.

The compiled extension ``latsum._ckernels`` is used when it was built;
otherwise, or when ``LATSUM_PURE_PYTHON=1`` is set, the pure-Python module is
used.  Both expose the same functions.
"""
import os

from . import _pykernels

python_backend = _pykernels
compiled_backend = None

if os.environ.get("LATSUM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = active.BACKEND

series_mul = active.series_mul
linear_power = active.linear_power
step_eval = active.step_eval
