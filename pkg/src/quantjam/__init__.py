"""Fundamental limits for jammer-resilient communication with finite-resolution ADCs."""

from .bounds import (
    BoundResult,
    ChannelPair,
    SystemConfig,
    f_bar,
    f_bar_simplified,
    iota_bar,
    jammer_free_mi,
    mutual_info_upper_bound,
    sinr_upper_bound,
    unquantized_lower_bound,
)
from .channels import ChannelModel, sample_los_pair, sample_rayleigh_pair, ula_steering
from .linalg import SeededRng

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "ChannelModel",
    "ChannelPair",
    "SeededRng",
    "SystemConfig",
    "f_bar",
    "f_bar_simplified",
    "iota_bar",
    "jammer_free_mi",
    "mutual_info_upper_bound",
    "sample_los_pair",
    "sample_rayleigh_pair",
    "sinr_upper_bound",
    "ula_steering",
    "unquantized_lower_bound",
]
