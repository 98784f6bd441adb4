"""Experiment runners behind the CLI subcommands.

Every random trial ``t`` draws from ``SeededRng(seed).substream(t)``, and
results are gathered in trial order, so output does not depend on how many
worker threads were used.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..bounds import (bound_from_row_norms, capacity_term, db_to_linear, iota_bar,
                      jammer_free_mi, unquantized_lower_bound)
from ..channels import sample_pair
from ..exceptions import ConfigError
from ..linalg import SeededRng, sample_complex_gaussian

__all__ = ["Table", "CdfResult", "run_iota_sweep", "run_cdf_experiment", "cdf_samples",
           "cdf_terms_table", "run_unquantized_cdf", "run_asymptotics", "percentile"]

log = logging.getLogger(__name__)


@dataclass
class Table:
    columns: list
    rows: list = field(default_factory=list)
    seed: int = None

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("table rows must match the column count")

    def column(self, name):
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


@dataclass
class CdfResult:
    label: str
    sorted_values: np.ndarray
    trials: int
    seed: int

    def __post_init__(self):
        self.sorted_values = np.sort(np.asarray(self.sorted_values, dtype=float))
        if self.sorted_values.size != self.trials:
            raise ValueError("CDF sample count must equal trials")


def percentile(result, q):
    """Empirical ``q``-quantile (``0 < q <= 1``) by the inverted-CDF rule."""
    k = max(int(math.ceil(q * result.trials)) - 1, 0)
    return float(result.sorted_values[k])


def _require_kind(spec, kind):
    if spec.kind != kind:
        raise ConfigError(f"expected kind {kind!r}, got {spec.kind!r}", "kind")


def _map_trials(fn, n, workers):
    """``[fn(0), ..., fn(n-1)]``, optionally spread over threads."""
    if workers <= 1 or n < 2:
        return [fn(t) for t in range(n)]
    chunks = np.array_split(np.arange(n), min(workers * 4, n))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(lambda idx: [fn(int(t)) for t in idx], chunks)
        return [item for part in parts for item in part]


def run_iota_sweep(spec):
    """Per-ADC bound against ``1/SINR`` in dB for every resolution in ``bits_list``."""
    _require_kind(spec, "iota_sweep")
    inv_db = spec.grid.points()
    sinr = db_to_linear(-inv_db)
    rows = []
    for m in spec.bits_list:
        exact = iota_bar(2 ** m, sinr, "exact")
        simple = iota_bar(2 ** m, sinr, "simplified")
        rows.extend((float(x), m, float(e), float(s)) for x, e, s in zip(inv_db, exact, simple))
    return Table(["inv_sinr_db", "bits", "iota_exact", "iota_simplified"], rows)


def cdf_samples(spec, workers=1):
    """Per-trial bound terms: ``{bits: (sum_term, capacity_term, value)}`` arrays."""
    _require_kind(spec, "cdf")
    sys = spec.system
    n0 = float(db_to_linear(sys.n0_db))
    rho = float(db_to_linear(sys.rho_db))
    root = SeededRng(spec.seed)

    def draw(t):
        cp = sample_pair(root.substream(t), sys.B, sys.U, sys.I, spec.model)
        return (np.sum(np.abs(cp.H) ** 2, axis=1), np.sum(np.abs(cp.J) ** 2, axis=1),
                capacity_term(cp.H, n0))

    draws = _map_trials(draw, spec.trials, workers)
    h_norm = np.array([d[0] for d in draws])
    j_norm = np.array([d[1] for d in draws])
    cap = np.array([d[2] for d in draws])
    out = {}
    for m in spec.bits_list:
        sum_term, value = bound_from_row_norms(h_norm, j_norm, cap, rho, n0, 2 ** m,
                                               spec.sinr_variant, spec.f_variant)
        out[m] = (sum_term, cap, value)
        log.info("%s m=%d: sum term active in %d of %d trials", spec.model.tag, m,
                 int(np.sum(sum_term <= cap)), spec.trials)
    return out


def run_cdf_experiment(spec, workers=1, samples=None):
    """Sorted system-bound samples over channel draws, one curve per resolution."""
    samples = samples or cdf_samples(spec, workers)
    return [CdfResult(f"{spec.model.tag} m={m}", samples[m][2], spec.trials, spec.seed)
            for m in spec.bits_list]


def cdf_terms_table(spec, samples):
    """Both arguments of the minimum for every trial, in trial order."""
    rows = []
    for m in spec.bits_list:
        sum_term, cap, value = samples[m]
        rows.extend((t, m, float(s), float(c), float(v))
                    for t, (s, c, v) in enumerate(zip(sum_term, cap, value)))
    return Table(["trial", "bits", "sum_term", "capacity_term", "value"], rows, seed=spec.seed)


def run_unquantized_cdf(spec, workers=1):
    """Infinite-resolution curves: nulling lower bound, jammer-free ``B x U``,
    and (Rayleigh only) jammer-free ``(B - I) x U``. The jammer power is unused."""
    _require_kind(spec, "unquantized_cdf")
    sys = spec.system
    if sys.I >= sys.B:
        raise ConfigError("must be smaller than system.B", "system.I")
    n0 = float(db_to_linear(sys.n0_db))
    root = SeededRng(spec.seed)
    rayleigh = spec.model.tag == "rayleigh"

    def draw(t):
        trial = root.substream(t)
        cp = sample_pair(trial, sys.B, sys.U, sys.I, spec.model)
        row = [unquantized_lower_bound(cp, n0), jammer_free_mi(cp.H, n0)]
        if rayleigh:
            fresh = sample_complex_gaussian(trial.substream(2), sys.B - sys.I, sys.U)
            row.append(jammer_free_mi(fresh, n0))
        return row

    values = np.array(_map_trials(draw, spec.trials, workers))
    tag = spec.model.tag
    labels = [f"{tag} lower bound", f"{tag} jammer-free {sys.B}x{sys.U}"]
    if rayleigh:
        labels.append(f"{tag} jammer-free {sys.B - sys.I}x{sys.U}")
    return [CdfResult(lab, values[:, k], spec.trials, spec.seed) for k, lab in enumerate(labels)]


def _levels_for(rho_db, exponent):
    # rounding guards exact powers of ten (e.g. 1e5) against ceil overshoot
    return max(2, int(math.ceil(round(10.0 ** (rho_db * exponent / 10.0), 6))))


def run_asymptotics(spec):
    """System bound against jammer power under fixed and power-scaled resolutions.

    Uses one channel draw from ``spec.model`` (seeded); for the LoS model
    the row norms, hence the sum term, do not depend on the draw.
    Policies: ``fixed_m<m>`` for each ``m`` in ``bits_list`` and
    ``rho^<e>`` (``M = ceil(rho**e)``) for each exponent.
    """
    _require_kind(spec, "asymptotics")
    sys = spec.system
    n0 = float(db_to_linear(sys.n0_db))
    cp = sample_pair(SeededRng(spec.seed).substream(0), sys.B, sys.U, sys.I, spec.model)
    h_norm = np.sum(np.abs(cp.H) ** 2, axis=1)
    j_norm = np.sum(np.abs(cp.J) ** 2, axis=1)
    cap = capacity_term(cp.H, n0)
    policies = [(f"fixed_m{m}", lambda r, m=m: 2 ** m) for m in spec.bits_list]
    policies += [(f"rho^{e:g}", lambda r, e=e: _levels_for(r, e)) for e in spec.exponents]
    rows = []
    for rho_db in spec.grid.points():
        rho = float(db_to_linear(rho_db))
        for name, levels in policies:
            M = levels(rho_db)
            _, value = bound_from_row_norms(h_norm, j_norm, cap, rho, n0, M,
                                            spec.sinr_variant, spec.f_variant)
            rows.append((float(rho_db), name, M, float(value)))
    return Table(["rho_db", "policy", "M", "I_bar"], rows, seed=spec.seed)
