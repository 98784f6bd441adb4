"""Closed-form mutual-information limits for quantized, jammed MIMO receivers.

A ``B``-antenna receiver sees ``y = H s + J w + n`` and feeds the real and
imaginary part of every antenna to an ``M``-level ADC. For each of the
``2B`` ADCs, :func:`iota_bar` caps the information that ADC can carry about
the legitimate signal given its signal-to-interference-plus-noise ratio;
:func:`mutual_info_upper_bound` sums those caps and clips the result at the
capacity of the unquantized, jammer-free channel.

For reference, the infinite-resolution receiver keeps
:func:`unquantized_lower_bound` bits no matter how strong the jammer is.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .exceptions import DomainError, ShapeError
from .linalg import as_complex_matrix, hermitian_logdet_capacity, orthonormal_complement

__all__ = [
    "SystemConfig",
    "ChannelPair",
    "BoundResult",
    "SINR_VARIANTS",
    "F_VARIANTS",
    "db_to_linear",
    "f_bar",
    "f_bar_simplified",
    "iota_bar",
    "sinr_upper_bound",
    "mutual_info_upper_bound",
    "bound_from_row_norms",
    "capacity_term",
    "jammer_free_mi",
    "unquantized_lower_bound",
]

SINR_VARIANTS = ("general", "gaussian_input")
F_VARIANTS = ("exact", "simplified")

_SQRT2 = np.sqrt(2.0)
_SQRT_2_OVER_PI = np.sqrt(2.0 / np.pi)
_SQRT_8_OVER_PI = np.sqrt(8.0 / np.pi)
_SERIES_CUTOFF = 1e-4


def db_to_linear(x_db):
    return 10.0 ** (np.asarray(x_db, dtype=float) / 10.0)


@dataclass(frozen=True)
class SystemConfig:
    """Dimensions, powers (linear scale) and ADC level count of one system."""

    B: int
    U: int
    I: int
    rho: float
    n0: float
    M: int

    def __post_init__(self):
        if self.B < 1 or self.U < 1 or self.I < 0:
            raise DomainError("need B >= 1, U >= 1, I >= 0")
        if not self.rho >= 0:
            raise DomainError("rho must be non-negative")
        if not self.n0 > 0:
            raise DomainError("n0 must be positive")
        if int(self.M) != self.M or self.M < 2:
            raise DomainError("M must be an integer >= 2")

    @classmethod
    def from_db(cls, B, U, I, rho_db, n0_db, M):
        return cls(B, U, I, float(db_to_linear(rho_db)), float(db_to_linear(n0_db)), M)


@dataclass(frozen=True)
class ChannelPair:
    """User channel ``H`` (``B x U``) and jammer channel ``J`` (``B x I``)."""

    H: np.ndarray
    J: np.ndarray

    def __post_init__(self):
        H = as_complex_matrix(self.H, "H")
        J = np.asarray(self.J, dtype=complex)
        if J.ndim == 1 and J.size == 0:
            J = J.reshape(H.shape[0], 0)
        J = as_complex_matrix(J, "J")
        if H.shape[0] != J.shape[0]:
            raise ShapeError(f"H has {H.shape[0]} rows but J has {J.shape[0]}")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "J", J)

    @property
    def B(self):
        return self.H.shape[0]

    @property
    def U(self):
        return self.H.shape[1]

    @property
    def I(self):
        return self.J.shape[1]


@dataclass(frozen=True)
class BoundResult:
    """Per-ADC ingredients and the final value of the system bound (bits).

    ADC ``c`` maps to antenna ``c // 2``; even ``c`` is the real part.
    """

    per_adc_sinr: np.ndarray = field(repr=False)
    per_adc_iota: np.ndarray = field(repr=False)
    sum_term: float
    capacity_term: float
    value: float


def _check_levels(M):
    if int(M) != M or M < 2:
        raise DomainError("M must be an integer >= 2")
    return int(M)


def _check_sinr(sinr):
    s = np.asarray(sinr, dtype=float)
    if not np.all(np.isfinite(s)) or np.any(s < 0):
        raise DomainError("sinr must be finite and non-negative")
    return s


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def f_bar(M, sinr):
    """Upper bound on the probability that the legitimate signal flips an ADC output.

    With ``x = (M - 1) sqrt(sinr)``::

        erf(x/sqrt2) + sqrt(2/pi) x exp(-x^2/2) - x^2 erfc(x/sqrt2)

    The result is clamped to ``[0, 1]`` against last-digit rounding.
    """
    M = _check_levels(M)
    x = float(M - 1) * np.sqrt(_check_sinr(sinr))
    u = x / _SQRT2
    with np.errstate(under="ignore"):
        val = (specfun.erf(u)
               + _SQRT_2_OVER_PI * x * np.exp(-0.5 * x * x)
               - x * x * specfun.erfc(u))
        # near 0: sqrt(8/pi) x - x^2 + sqrt(8/pi) x^3 / 6 - O(x^5); written as the
        # linear bound minus a non-negative term so the ordering survives rounding
        small = _SQRT_8_OVER_PI * x - x * x * (1.0 - _SQRT_8_OVER_PI * x / 6.0)
    val = np.where(x < _SERIES_CUTOFF, small, val)
    return _out(np.clip(val, 0.0, 1.0))


def f_bar_simplified(M, sinr):
    """Looser, linear-in-amplitude version ``sqrt(8/pi) (M-1) sqrt(sinr)``; may exceed 1."""
    M = _check_levels(M)
    return _out(_SQRT_8_OVER_PI * (float(M - 1) * np.sqrt(_check_sinr(sinr))))


def iota_bar(M, sinr, variant="exact"):
    """Cap (bits) on the conditional mutual information one ADC can deliver.

    ``min(log2 M, Hb(min(f, 1/2)) + f log2(M - 1))`` with ``f`` from
    :func:`f_bar` (``variant="exact"``) or :func:`f_bar_simplified`.
    """
    M = _check_levels(M)
    if variant == "exact":
        f = np.asarray(f_bar(M, sinr))
    elif variant == "simplified":
        f = np.asarray(f_bar_simplified(M, sinr))
    else:
        raise DomainError(f"unknown f variant {variant!r}")
    val = np.asarray(specfun.clipped_binary_entropy(f))
    if M > 2:
        val = val + f * math.log2(M - 1)
    return _out(np.minimum(math.log2(M), val))


def _sinr_from_norms(h_norm_sq, j_norm_sq, rho, n0, variant):
    if variant not in SINR_VARIANTS:
        raise DomainError(f"unknown SINR variant {variant!r}")
    if not rho >= 0:
        raise DomainError("rho must be non-negative")
    if not n0 > 0:
        raise DomainError("n0 must be positive")
    num = 2.0 * h_norm_sq if variant == "general" else h_norm_sq
    return num / (rho * j_norm_sq + n0)


def sinr_upper_bound(cp, rho, n0, b, variant="general"):
    """SINR bound at both ADCs of antenna ``b`` (0-based).

    ``general`` holds for any uncorrelated unit-power inputs and carries a
    factor 2; ``gaussian_input`` is the tight value for Gaussian signalling.
    """
    if not 0 <= b < cp.B:
        raise IndexError(f"antenna index {b} out of range for B={cp.B}")
    h = cp.H[b]
    j = cp.J[b]
    return float(_sinr_from_norms(np.real(np.vdot(h, h)), np.real(np.vdot(j, j)),
                                  rho, n0, variant))


def capacity_term(H, n0):
    """Jammer-free capacity ``log2 det(I + H H^H / n0)`` on the smaller Gram side."""
    H = np.asarray(H, dtype=complex)
    B, U = H.shape
    # Sylvester: det(I_B + H H^H / n0) = det(I_U + H^H H / n0)
    if U < B:
        return hermitian_logdet_capacity(H.conj().T, n0)
    return hermitian_logdet_capacity(H, n0)


def bound_from_row_norms(h_norm_sq, j_norm_sq, capacity, rho, n0, M,
                         sinr_variant="general", f_variant="exact"):
    """Vectorised system bound from per-antenna row norms.

    ``h_norm_sq`` and ``j_norm_sq`` have shape ``(..., B)``; ``capacity`` is
    broadcast against the leading axes. Returns ``(sum_term, value)``.
    """
    sinr = _sinr_from_norms(np.asarray(h_norm_sq, float), np.asarray(j_norm_sq, float),
                            rho, n0, sinr_variant)
    sum_term = 2.0 * np.sum(iota_bar(M, sinr, f_variant), axis=-1)
    return sum_term, np.minimum(sum_term, capacity)


def mutual_info_upper_bound(sys, cp, variant="general", f_variant="exact"):
    """Upper bound on ``I(q; s)`` for the quantized, jammed system (bits).

    The legitimate inputs must be uncorrelated with unit power and the
    jammer Gaussian with power ``sys.rho`` per antenna.
    """
    if (cp.B, cp.U, cp.I) != (sys.B, sys.U, sys.I):
        raise ShapeError(f"channel dims {(cp.B, cp.U, cp.I)} do not match "
                         f"config {(sys.B, sys.U, sys.I)}")
    h_norm = np.sum(np.abs(cp.H) ** 2, axis=1)
    j_norm = np.sum(np.abs(cp.J) ** 2, axis=1)
    sinr = np.repeat(_sinr_from_norms(h_norm, j_norm, sys.rho, sys.n0, variant), 2)
    iota = np.asarray(iota_bar(sys.M, sinr, f_variant), dtype=float)
    sum_term = float(np.sum(iota))
    capacity = capacity_term(cp.H, sys.n0)
    return BoundResult(per_adc_sinr=sinr, per_adc_iota=iota, sum_term=sum_term,
                       capacity_term=capacity, value=min(sum_term, capacity))


def jammer_free_mi(H, n0):
    """Mutual information ``log2 det(I + H H^H / n0)`` of the jammer-free channel
    with ``CN(0, I)`` inputs."""
    return hermitian_logdet_capacity(as_complex_matrix(H, "H"), n0)


def unquantized_lower_bound(cp, n0):
    """Rate an infinite-resolution receiver keeps after nulling the jammer (bits).

    Projects onto the orthogonal complement of ``col(J)``; the jammer power
    does not enter.
    """
    U_perp = orthonormal_complement(cp.J)
    return hermitian_logdet_capacity(U_perp.conj().T @ cp.H, n0)
