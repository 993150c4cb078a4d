"""Pick the compiled kernels when available, else the numpy fallback.

Set ``RANKIN_COHEN_PURE=1`` to force the fallback (used by the benchmark
and by the tests that compare both paths).
"""
import os

from . import _fallback

if os.environ.get("RANKIN_COHEN_PURE", "") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _fallback

BACKEND = "compiled" if _impl is not _fallback else "python"

jacobi_table = _impl.jacobi_table
kummer_series = _impl.kummer_series
