"""Random channel draws: i.i.d. Rayleigh fading and a line-of-sight ULA model.

Path loss is not modelled; power differences are folded into the jammer
power of the bound.
"""

from dataclasses import dataclass

import numpy as np

from .bounds import ChannelPair
from .exceptions import DomainError
from .linalg import sample_complex_gaussian

__all__ = ["ChannelModel", "ula_steering", "sample_rayleigh_pair", "sample_los_pair",
           "sample_pair"]

CHANNEL_TAGS = ("rayleigh", "los_ula")


@dataclass(frozen=True)
class ChannelModel:
    """Channel family; ``sector_half_angle`` (radians) only matters for ``los_ula``.

    Angles are measured from the array axis, so broadside is ``pi/2`` and the
    default half-angle ``pi/3`` gives a 120 degree sector.
    """

    tag: str = "rayleigh"
    sector_half_angle: float = np.pi / 3

    def __post_init__(self):
        if self.tag not in CHANNEL_TAGS:
            raise DomainError(f"unknown channel model {self.tag!r}")
        if not 0 < self.sector_half_angle <= np.pi / 2:
            raise DomainError("sector_half_angle must lie in (0, pi/2]")


def ula_steering(theta, B):
    """Half-wavelength ULA response ``exp(-i pi cos(theta) k)``, ``k = 0..B-1``."""
    if B < 1:
        raise DomainError("B must be >= 1")
    if not 0 <= theta <= np.pi:
        raise DomainError("theta must lie in [0, pi]")
    return np.exp(-1j * np.pi * np.cos(theta) * np.arange(B))


def sample_rayleigh_pair(rng, B, U, I):
    """``H`` and ``J`` with i.i.d. ``CN(0, 1)`` entries from disjoint sub-streams."""
    H = sample_complex_gaussian(rng.substream(0), B, U, 1.0)
    J = sample_complex_gaussian(rng.substream(1), B, I, 1.0)
    return ChannelPair(H, J)


def sample_los_pair(rng, B, U, I, model=None, angles=None):
    """LoS pair with each device at an angle uniform in the sector.

    ``angles`` (length ``U + I``, users first) overrides the random draw.
    """
    model = model or ChannelModel("los_ula")
    if model.tag != "los_ula":
        raise DomainError("sample_los_pair needs a los_ula model")
    if angles is None:
        half = model.sector_half_angle
        gen = rng.substream(0).generator()
        angles = gen.uniform(np.pi / 2 - half, np.pi / 2 + half, size=U + I)
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (U + I,):
        raise DomainError(f"expected {U + I} angles, got shape {angles.shape}")
    cols = [ula_steering(t, B) for t in angles]
    H = np.stack(cols[:U], axis=1)
    J = np.stack(cols[U:], axis=1) if I else np.zeros((B, 0), dtype=complex)
    return ChannelPair(H, J)


def sample_pair(rng, B, U, I, model):
    """Dispatch on ``model.tag``."""
    if model.tag == "rayleigh":
        return sample_rayleigh_pair(rng, B, U, I)
    return sample_los_pair(rng, B, U, I, model)
