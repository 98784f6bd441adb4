"""Numerical checks of the per-ADC bound on a single scalar quantizer.

The ADC input is ``y = r + d`` with interference-plus-noise
``d ~ N(0, sigma_d_sq)`` and legitimate signal ``r`` of power ``R``. A flip
is the event ``Q(r + d) != Q(d)``. Everything here is computed directly
from that model, without reference to the closed forms in
:mod:`quantjam.bounds`, so the two can be compared.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from ..exceptions import DomainError
from ..linalg import SeededRng
from .quadrature import graded_edges, romberg_panels

__all__ = [
    "ScalarQuantizer",
    "ScalarChannel",
    "quantize",
    "boundary_distance",
    "conditional_flip_probability",
    "flip_probability_numeric",
    "flip_probability_search",
    "spread_bound_numeric",
    "scalar_conditional_mi_numeric",
]

SPAN = 10.0


@dataclass(frozen=True)
class ScalarQuantizer:
    """An ``M``-level quantizer given by its ``M - 1`` sorted boundaries."""

    boundaries: tuple

    def __post_init__(self):
        b = tuple(float(g) for g in np.atleast_1d(self.boundaries))
        if len(b) < 1:
            raise DomainError("a quantizer needs at least one boundary")
        if not all(np.isfinite(b)) or any(x >= y for x, y in zip(b, b[1:])):
            raise DomainError("boundaries must be finite and strictly increasing")
        object.__setattr__(self, "boundaries", b)

    @property
    def levels(self):
        return len(self.boundaries) + 1

    @classmethod
    def uniform(cls, M, spacing, center=0.0):
        """Symmetric uniform quantizer with ``M - 1`` boundaries ``spacing`` apart."""
        k = np.arange(1, M) - M / 2.0
        return cls(tuple(center + spacing * k))


@dataclass(frozen=True)
class ScalarChannel:
    """Signal power ``R``, variance of ``d``, and the law of ``r``.

    ``r_dist="gaussian"`` means ``r ~ N(0, R)``. ``r_dist="two_point"``
    means ``r = +-sqrt(R/p)`` with probability ``p/2`` each and ``0``
    otherwise, so ``E r^2 = R``.
    """

    R: float
    sigma_d_sq: float
    r_dist: str = "gaussian"
    p: float = 1.0

    def __post_init__(self):
        if not self.R >= 0:
            raise DomainError("R must be non-negative")
        if not self.sigma_d_sq > 0:
            raise DomainError("sigma_d_sq must be positive")
        if self.r_dist not in ("gaussian", "two_point"):
            raise DomainError(f"unknown r distribution {self.r_dist!r}")
        if self.r_dist == "two_point" and not 0 < self.p <= 1:
            raise DomainError("two-point probability p must lie in (0, 1]")

    @property
    def sinr(self):
        return self.R / self.sigma_d_sq

    @property
    def sigma_d(self):
        return float(np.sqrt(self.sigma_d_sq))


def quantize(q, x):
    """Cell index of ``x``: the number of boundaries ``<= x``.

    A value exactly on a boundary goes to the upper cell.
    """
    idx = np.searchsorted(np.asarray(q.boundaries), x, side="right")
    return int(idx) if np.ndim(idx) == 0 else idx


def boundary_distance(q, x):
    """Distance from ``x`` to the nearest boundary."""
    g = np.asarray(q.boundaries)
    d = np.min(np.abs(np.asarray(x, dtype=float)[..., None] - g), axis=-1)
    return float(d) if np.ndim(d) == 0 else d


def _cell_limits(q, x):
    g = np.concatenate([[-np.inf], q.boundaries, [np.inf]])
    idx = np.searchsorted(np.asarray(q.boundaries), x, side="right")
    return g[idx], g[idx + 1]


def _gauss_pdf(x, sigma):
    return np.exp(-0.5 * (x / sigma) ** 2) / (sigma * np.sqrt(2.0 * np.pi))


def conditional_flip_probability(q, ch, x):
    """``P(Q(x + r) != Q(x))`` for a fixed interference value ``x``."""
    x = np.asarray(x, dtype=float)
    lo, hi = _cell_limits(q, x)
    if ch.R == 0:
        out = np.zeros_like(x)
    elif ch.r_dist == "gaussian":
        s = np.sqrt(ch.R)
        with np.errstate(invalid="ignore"):
            out = ndtr((lo - x) / s) + ndtr((x - hi) / s)
    else:
        a = np.sqrt(ch.R / ch.p)
        # r = +a leaves the cell iff x + a >= hi; r = -a iff x - a < lo
        out = 0.5 * ch.p * ((x + a >= hi).astype(float) + (x - a < lo).astype(float))
    return float(out) if out.ndim == 0 else out


def _interval_union_measure(intervals, sigma):
    """Gaussian ``N(0, sigma^2)`` measure of a union of half-open intervals."""
    intervals = sorted(intervals)
    total = 0.0
    cur_lo, cur_hi = intervals[0]
    for lo, hi in intervals[1:]:
        if lo <= cur_hi:
            cur_hi = max(cur_hi, hi)
        else:
            total += ndtr(cur_hi / sigma) - ndtr(cur_lo / sigma)
            cur_lo, cur_hi = lo, hi
    total += ndtr(cur_hi / sigma) - ndtr(cur_lo / sigma)
    return float(total)


def _two_point_flip(q, ch):
    a = np.sqrt(ch.R / ch.p)
    g = q.boundaries
    # x + a crosses some boundary iff x in [gamma - a, gamma); x - a iff x in [gamma, gamma + a)
    up = _interval_union_measure([(c - a, c) for c in g], ch.sigma_d)
    down = _interval_union_measure([(c, c + a) for c in g], ch.sigma_d)
    return 0.5 * ch.p * (up + down)


def flip_probability_numeric(q, ch, rtol=1e-10):
    """Total flip probability ``P(Q(d + r) != Q(d))``.

    Gaussian ``r``: quadrature over ``d`` on ``+-10 sigma_d`` with the exact
    conditional probability inside. Two-point ``r``: the set of ``d`` that
    flips is a finite union of intervals, so its Gaussian measure is exact.
    """
    if ch.R == 0:
        return 0.0
    if ch.r_dist == "two_point":
        return _two_point_flip(q, ch)
    sd = ch.sigma_d
    lo, hi = -SPAN * sd, SPAN * sd
    edges = graded_edges(q.boundaries, np.sqrt(ch.R), lo, hi, sigma=sd)

    def integrand(x):
        return conditional_flip_probability(q, ch, x) * _gauss_pdf(x, sd)

    return min(1.0, max(0.0, romberg_panels(integrand, edges, rtol=rtol)))


def spread_bound_numeric(M, ch, rtol=1e-12):
    """Quadrature of ``E[min(1, R (M-1)^2 / d^2)]`` for Gaussian ``d``.

    This is the Markov-type flip bound after the worst-case boundary
    placement has been spread out by a factor ``M - 1``.
    """
    if M < 2:
        raise DomainError("M must be >= 2")
    if ch.r_dist != "gaussian":
        raise DomainError("spread bound is defined for the Gaussian-interference channel")
    if ch.R == 0:
        return 0.0
    sd = ch.sigma_d
    a = (M - 1) * np.sqrt(ch.R)
    lo, hi = -SPAN * sd, SPAN * sd
    edges = graded_edges([0.0], a, lo, hi, sigma=sd)
    edges = np.union1d(edges, [v for v in (-a, a) if lo < v < hi])

    def integrand(x):
        ax = np.abs(x)
        g = np.where(ax > a, (a / np.maximum(ax, a)) ** 2, 1.0)
        return g * _gauss_pdf(x, sd)

    return romberg_panels(integrand, edges, rtol=rtol)


def scalar_conditional_mi_numeric(q, ch, rtol=1e-10):
    """``I(q; r | d) = E_d[H(Q(d + r) | d)]`` in bits, Gaussian ``r`` only."""
    if ch.r_dist != "gaussian":
        raise DomainError("conditional MI oracle supports Gaussian r only")
    if ch.R == 0:
        return 0.0
    sd = ch.sigma_d
    s = np.sqrt(ch.R)
    g = np.asarray(q.boundaries)
    lo, hi = -SPAN * sd, SPAN * sd
    edges = graded_edges(g, s, lo, hi, sigma=sd)

    def integrand(x):
        z = (g[None, :] - x[:, None]) / s
        below = ndtr(z)
        probs = np.diff(below, axis=1, prepend=0.0)
        last = ndtr(-z[:, -1:])
        probs = np.concatenate([probs, last], axis=1)
        probs = np.clip(probs, 0.0, 1.0)
        safe = np.where(probs > 0, probs, 1.0)
        ent = -np.sum(probs * np.log2(safe), axis=1)
        return ent * _gauss_pdf(x, sd)

    return max(0.0, romberg_panels(integrand, edges, rtol=rtol))


def flip_probability_search(M, ch, starts=32, iterations=200, step0=None, step_final=None,
                            seed=0):
    """Multi-start coordinate ascent for the flip-maximising boundary set.

    Returns ``(best_probability, best_quantizer)``. Random starts draw the
    boundaries i.i.d. ``N(0, sigma_d_sq + R)``; one extra deterministic
    start is the symmetric uniform quantizer with spacing ``2 sqrt(R)``.
    The step shrinks geometrically from ``step0`` to ``step_final`` over
    ``iterations`` sweeps.
    """
    if M < 2:
        raise DomainError("M must be >= 2")
    total_sd = np.sqrt(ch.sigma_d_sq + ch.R)
    if ch.R == 0:
        return 0.0, ScalarQuantizer.uniform(M, total_sd)
    step0 = step0 if step0 is not None else total_sd
    scale = min(np.sqrt(ch.R), ch.sigma_d)
    step_final = step_final if step_final is not None else 1e-4 * scale
    decay = (step_final / step0) ** (1.0 / max(iterations - 1, 1))

    spacing = min(2.0 * np.sqrt(ch.R), 6.0 * total_sd / max(M - 1, 1))
    inits = [np.asarray(ScalarQuantizer.uniform(M, spacing).boundaries)]
    base = SeededRng(seed)
    for k in range(starts):
        inits.append(np.sort(base.substream(k).generator().normal(0.0, total_sd, M - 1)))

    def objective(b):
        if np.any(np.diff(b) <= 0):
            return -1.0
        return flip_probability_numeric(ScalarQuantizer(tuple(b)), ch, rtol=1e-8)

    best_val, best_b = -1.0, inits[0]
    for b in inits:
        b = b.copy()
        val = objective(b)
        step = step0
        for _ in range(iterations):
            for i in range(M - 1):
                for delta in (step, -step):
                    cand = b.copy()
                    cand[i] += delta
                    cand.sort()
                    cval = objective(cand)
                    if cval > val:
                        b, val = cand, cval
                        break
            step *= decay
        if val > best_val:
            best_val, best_b = val, b
    return float(best_val), ScalarQuantizer(tuple(best_b))
