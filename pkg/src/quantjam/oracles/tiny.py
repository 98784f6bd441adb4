"""End-to-end mutual information of very small quantized systems.

QPSK users (``s_u`` uniform on ``(+-1 +- i)/sqrt(2)``) transmit through
``y = H s + J w + n``; each real component of ``y`` is quantized. With at
most two antennas and two users the outcome alphabet is small enough to
estimate ``I(q; s)`` directly, giving an independent check on the system
bound.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.special import ndtr, ndtri

from ..bounds import ChannelPair
from ..exceptions import DomainError, UnsupportedConfigurationError
from ..linalg import SeededRng

__all__ = ["TinySystem", "MonteCarloEstimate", "qpsk_symbols", "tiny_system_mi_exact",
           "tiny_system_mi_mc", "default_boundaries"]

MAX_ALPHABET = 256


@dataclass(frozen=True)
class TinySystem:
    H: np.ndarray
    J: np.ndarray
    rho: float
    n0: float

    def __post_init__(self):
        cp = ChannelPair(self.H, self.J)
        object.__setattr__(self, "H", cp.H)
        object.__setattr__(self, "J", cp.J)
        if cp.B > 2 or cp.U > 2 or cp.I > 1:
            raise UnsupportedConfigurationError("tiny systems need B <= 2, U <= 2, I <= 1")
        if not self.rho >= 0 or not self.n0 > 0:
            raise DomainError("need rho >= 0 and n0 > 0")

    @property
    def channels(self):
        return ChannelPair(self.H, self.J)


@dataclass(frozen=True)
class MonteCarloEstimate:
    value: float
    stderr: float


def qpsk_symbols(U):
    """All ``4**U`` QPSK symbol vectors, shape ``(4**U, U)``."""
    pts = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j]) / np.sqrt(2.0)
    return np.array(list(product(pts, repeat=U)), dtype=complex).reshape(-1, U)


def _components(z):
    """Interleave real/imaginary parts: ``(..., B)`` complex -> ``(..., 2B)`` real."""
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],))
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out


def _noise_std(sys):
    j_norm = np.sum(np.abs(sys.J) ** 2, axis=1)
    return np.repeat(np.sqrt((sys.rho * j_norm + sys.n0) / 2.0), 2)


def _mi_uniform_input(p_q_given_s):
    """``I(q; s)`` in bits for uniform ``s`` from a ``(S, K)`` table."""
    p_q = p_q_given_s.mean(axis=0)
    mask = p_q_given_s > 0
    ratio = np.where(mask, p_q_given_s, 1.0) / np.where(p_q > 0, p_q, 1.0)[None, :]
    return float(np.sum(np.where(mask, p_q_given_s * np.log2(ratio), 0.0)) / p_q_given_s.shape[0])


def tiny_system_mi_exact(sys):
    """Exact ``I(q; s)`` with 1-bit (sign) ADCs.

    Only valid when the quantized components are independent given ``s``:
    a single antenna (``B = 1``), or no jammer (``I = 0``).
    """
    B, I = sys.H.shape[0], sys.J.shape[1]
    if not (B == 1 or I == 0):
        raise UnsupportedConfigurationError(
            "exact oracle needs conditionally independent components (B = 1 or I = 0)")
    mean = _components(qpsk_symbols(sys.H.shape[1]) @ sys.H.T)
    p_pos = ndtr(mean / _noise_std(sys))
    p_neg = ndtr(-mean / _noise_std(sys))
    n_comp = 2 * B
    patterns = np.array(list(product((0, 1), repeat=n_comp)), dtype=bool)
    table = np.ones((mean.shape[0], patterns.shape[0]))
    for c in range(n_comp):
        table *= np.where(patterns[None, :, c], p_pos[:, c:c + 1], p_neg[:, c:c + 1])
    return max(0.0, _mi_uniform_input(table))


def default_boundaries(sys, M):
    """Per-component boundaries at the ``k/M`` quantiles of the receive marginal.

    Returns shape ``(2B, M - 1)``; ``M = 2`` gives sign quantizers.
    """
    h_norm = np.sum(np.abs(sys.H) ** 2, axis=1)
    j_norm = np.sum(np.abs(sys.J) ** 2, axis=1)
    sd = np.repeat(np.sqrt((h_norm + sys.rho * j_norm + sys.n0) / 2.0), 2)
    return sd[:, None] * ndtri(np.arange(1, M) / M)[None, :]


def tiny_system_mi_mc(sys, M_levels=2, trials=100_000, rng=None, boundaries=None,
                      n_boot=200):
    """Plug-in Monte Carlo estimate of ``I(q; s)`` with a bootstrap standard error.

    For each QPSK symbol vector, ``trials`` jammer and noise draws are
    quantized and counted. The standard error comes from a multinomial
    bootstrap of those counts.
    """
    B = sys.H.shape[0]
    K = M_levels ** (2 * B)
    if M_levels < 2 or M_levels > 4 or K > MAX_ALPHABET:
        raise UnsupportedConfigurationError(f"alphabet {M_levels}^{2 * B} too large")
    if trials < 1:
        raise DomainError("trials must be positive")
    rng = rng or SeededRng(0)
    bounds = default_boundaries(sys, M_levels) if boundaries is None else np.asarray(boundaries)
    if bounds.shape != (2 * B, M_levels - 1):
        raise DomainError(f"boundaries must have shape {(2 * B, M_levels - 1)}")
    symbols = qpsk_symbols(sys.H.shape[1])
    I = sys.J.shape[1]
    weights = M_levels ** np.arange(2 * B)
    counts = np.zeros((symbols.shape[0], K))
    for si, s in enumerate(symbols):
        gen = rng.substream(si).generator()
        w = gen.standard_normal((trials, I, 2)) @ np.array([1.0, 1j]) * np.sqrt(sys.rho / 2.0)
        n = gen.standard_normal((trials, B, 2)) @ np.array([1.0, 1j]) * np.sqrt(sys.n0 / 2.0)
        y = _components(sys.H @ s + w @ sys.J.T + n)
        levels = np.empty(y.shape, dtype=np.int64)
        for c in range(2 * B):
            levels[:, c] = np.searchsorted(bounds[c], y[:, c], side="right")
        counts[si] = np.bincount(levels @ weights, minlength=K)
    p_hat = counts / trials
    value = _mi_uniform_input(p_hat)
    boot_gen = rng.substream(symbols.shape[0]).generator()
    reps = np.array([_mi_uniform_input(boot_gen.multinomial(trials, p_hat) / trials)
                     for _ in range(n_boot)])
    return MonteCarloEstimate(value=max(0.0, value), stderr=float(reps.std(ddof=1)))
