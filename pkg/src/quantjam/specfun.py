"""Error functions and binary entropy, in bits.

All functions accept scalars or array-likes and return a float for scalar
input, an ndarray otherwise.
"""

import numpy as np
from scipy import special

from .exceptions import DomainError

__all__ = ["erf", "erfc", "binary_entropy", "clipped_binary_entropy"]


def _as_float(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def _out(arr):
    return float(arr) if arr.ndim == 0 else arr


def erf(x):
    """Error function ``2/sqrt(pi) * int_0^x exp(-t^2) dt``."""
    return _out(special.erf(_as_float(x, "x")))


def erfc(x):
    """Complementary error function, accurate deep into the upper tail."""
    return _out(special.erfc(_as_float(x, "x")))


def binary_entropy(p):
    """Binary entropy ``-p log2 p - (1-p) log2(1-p)`` with ``H(0) = H(1) = 0``.

    Evaluated at ``m = min(p, 1-p)`` (exact in floating point for the
    larger half) with the ``(1-m)`` term through ``log1p``, so that
    probabilities near either endpoint keep full relative precision.
    """
    p = _as_float(p, "p")
    if np.any((p < 0) | (p > 1)):
        raise DomainError("p must lie in [0, 1]")
    m = np.minimum(p, 1.0 - p)
    safe = np.where(m > 0, m, 1.0)
    head = np.where(m > 0, -m * np.log2(safe), 0.0)
    tail = -(1.0 - m) * np.log1p(-m) / np.log(2.0)
    return _out(head + tail)


def clipped_binary_entropy(x):
    """``binary_entropy(min(x, 1/2))`` for ``x >= 0``; saturates at one bit."""
    x = _as_float(x, "x")
    if np.any(x < 0):
        raise DomainError("x must be non-negative")
    return binary_entropy(np.minimum(x, 0.5))
