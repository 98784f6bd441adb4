"""Statistical check that nulling the jammer costs exactly ``I`` antennas.

For Rayleigh ``H`` and ``J``, the filtered channel ``U_perp^H H`` should be
i.i.d. ``CN(0, 1)`` of size ``(B - I) x U``; so the unquantized lower bound
should share its distribution with the jammer-free mutual information of a
fresh ``(B - I) x U`` Rayleigh channel.
"""

from dataclasses import dataclass

import numpy as np
from scipy import stats

from ..bounds import jammer_free_mi, unquantized_lower_bound
from ..channels import sample_rayleigh_pair
from ..exceptions import DomainError
from ..linalg import orthonormal_complement, sample_complex_gaussian

__all__ = ["ProjectionReport", "projection_equivalence_check"]


@dataclass(frozen=True)
class ProjectionReport:
    max_abs_mean: float
    max_var_deviation: float
    ks_distance: float
    samples: int


def projection_equivalence_check(rng, B, U, I, samples, n0=1e-3):
    """Moment and two-sample Kolmogorov-Smirnov comparison over ``samples`` draws."""
    if not B > I >= 1:
        raise DomainError("need B > I >= 1")
    if samples < 2:
        raise DomainError("need at least two samples")
    filtered = np.empty((samples, B - I, U), dtype=complex)
    lower = np.empty(samples)
    fresh = np.empty(samples)
    for t in range(samples):
        trial = rng.substream(t)
        cp = sample_rayleigh_pair(trial, B, U, I)
        filtered[t] = orthonormal_complement(cp.J).conj().T @ cp.H
        lower[t] = unquantized_lower_bound(cp, n0)
        fresh[t] = jammer_free_mi(sample_complex_gaussian(trial.substream(2), B - I, U), n0)
    mean = filtered.mean(axis=0)
    var = np.mean(np.abs(filtered - mean) ** 2, axis=0)
    ks = stats.ks_2samp(lower, fresh).statistic
    return ProjectionReport(
        max_abs_mean=float(np.max(np.abs(mean))),
        max_var_deviation=float(np.max(np.abs(var - 1.0))),
        ks_distance=float(ks),
        samples=samples,
    )
