"""Numeric kernels with a compiled fast path.

The compiled extension is optional; when it is missing the numpy reference
implementation is used.  Both expose the same functions and are kept in
exact-enough agreement that the test suite cross-checks them.
"""

from . import _ref

try:
    from . import _fast as _impl

    BACKEND = "compiled"
except ImportError:
    _impl = _ref
    BACKEND = "python"

square_mean_max = _impl.square_mean_max
series_eval = _impl.series_eval

__all__ = ["BACKEND", "square_mean_max", "series_eval", "_ref"]
