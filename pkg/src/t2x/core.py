"""Kernel backend selection.

The correlation pipeline spends nearly all of its time filling the
pair-amplitude matrix.  A compiled Cython extension does that job when the
build produced one; otherwise a numpy implementation takes over.  Set
T2X_CORE=python or T2X_CORE=compiled to force a choice (the benchmark and the
parity tests use this).
"""

import os

from . import _kernels_np

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built; fall back silently
    _compiled = None

_forced = os.environ.get("T2X_CORE", "").strip().lower()
if _forced == "python":
    _impl, _name = _kernels_np, "python"
elif _forced == "compiled":
    if _compiled is None:
        raise ImportError(
            "T2X_CORE=compiled but the compiled kernel extension is not available")
    _impl, _name = _compiled, "compiled"
elif _forced == "":
    if _compiled is not None:
        _impl, _name = _compiled, "compiled"
    else:
        _impl, _name = _kernels_np, "python"
else:
    raise ImportError(
        f"unknown T2X_CORE value {_forced!r} (expected 'python' or 'compiled')")


def backend_name():
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return _name


def build_g(kz1, kz2, kp_tab, pump_tab, row_offset, length, c2,
            center_index, pump_halfwidth):
    return _impl.build_g(kz1, kz2, kp_tab, pump_tab, row_offset, length, c2,
                         center_index, pump_halfwidth)


def available_backends():
    out = {"python": _kernels_np}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out
