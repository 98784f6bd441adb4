"""Acceptance checks run by ``quantjam verify``.

Each check returns a :class:`CheckResult` carrying the measured values, so
the CLI and the test-suite print the same evidence.
"""

import inspect
import os
import sys
import tempfile
import time
from dataclasses import dataclass

import numpy as np
from scipy.stats import ks_2samp

from .. import bounds
from ..bounds import SystemConfig, mutual_info_upper_bound
from ..channels import ChannelModel, sample_los_pair, sample_rayleigh_pair
from ..linalg import SeededRng
from ..oracles import (ScalarChannel, ScalarQuantizer, TinySystem, flip_probability_numeric,
                       flip_probability_search, scalar_conditional_mi_numeric,
                       spread_bound_numeric, tiny_system_mi_exact, tiny_system_mi_mc)
from .config import Grid, SystemSpec, default_spec
from .experiments import run_asymptotics, run_cdf_experiment, run_unquantized_cdf, percentile
from .render import render_csv

__all__ = ["CheckResult", "CHECKS", "run_verify"]

REFERENCE_SYSTEM = SystemSpec(B=16, U=2, I=1, rho_db=60.0, n0_db=-30.0)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'} [{self.number:2d}] {self.name}: {self.detail}"


def _los_value(M, rho_db=60.0):
    cp = sample_los_pair(SeededRng(1), 16, 2, 1, ChannelModel("los_ula"))
    return mutual_info_upper_bound(SystemConfig.from_db(16, 2, 1, rho_db, -30.0, M), cp).value


def check_marker_9bit(quick=False, workers=1):
    v = bounds.iota_bar(512, 10 ** -7.40, "exact")
    return CheckResult(1, "9-bit marker at 1/SINR = 74.0 dB", 1.95 <= v <= 2.05,
                       f"iota={v:.6f} bits, target [1.95, 2.05]")


def check_marker_10bit(quick=False, workers=1):
    v = bounds.iota_bar(1024, 10 ** -8.08, "exact")
    return CheckResult(2, "10-bit marker at 1/SINR = 80.8 dB", 1.95 <= v <= 2.05,
                       f"iota={v:.6f} bits, target [1.95, 2.05]")


def check_los_1bit(quick=False, workers=1):
    v = _los_value(2)
    ok = abs(v - 0.9929) <= 0.002 and v < 1.0
    return CheckResult(3, "LoS 1-bit system bound", ok, f"I_bar={v:.6f} bits, target 0.9929 +- 0.002 and < 1")


def check_los_2bit(quick=False, workers=1):
    v = _los_value(4)
    ok = abs(v - 2.971) <= 0.005 and v < 3.0
    return CheckResult(4, "LoS 2-bit system bound", ok, f"I_bar={v:.6f} bits, target 2.971 +- 0.005 and < 3")


def check_rayleigh_percentile(quick=False, workers=1):
    trials = 1_000 if quick else 10_000
    spec = default_spec("cdf").with_overrides(system=REFERENCE_SYSTEM, bits_list=(1,), trials=trials, seed=1)
    t0 = time.perf_counter()
    (res,) = run_cdf_experiment(spec, workers=workers)
    elapsed = time.perf_counter() - t0
    p90 = percentile(res, 0.9)
    ok = p90 <= 2.0 and elapsed < 30.0
    return CheckResult(5, "Rayleigh 1-bit 90th percentile", ok,
                       f"p90={p90:.4f} bits over {trials} trials (<= 2.0), {elapsed:.1f} s (< 30 s)")


def check_vanishing(quick=False, workers=1):
    vals = [_los_value(2, r) for r in (60.0, 90.0, 120.0, 150.0)]
    ok = all(a > b for a, b in zip(vals, vals[1:])) and vals[-1] < 1e-3
    shown = ", ".join(f"{v:.4g}" for v in vals)
    return CheckResult(6, "fixed resolution vanishes with jammer power", ok,
                       f"I_bar at 60/90/120/150 dB = [{shown}]; strictly decreasing and last < 1e-3")


def check_resolution_scaling(quick=False, workers=1):
    spec = default_spec("asymptotics").with_overrides(system=REFERENCE_SYSTEM, bits_list=(1,),
                                                      grid=Grid(60.0, 200.0, 10.0), seed=1)
    table = run_asymptotics(spec)
    value = {(r, p): v for r, p, _, v in table.rows}
    sub = value[(200.0, "rho^0.4")]
    crit = value[(200.0, "rho^0.5")]
    crit_ref = value[(100.0, "rho^0.5")]
    ok = sub < 0.01 and crit >= 0.5 * crit_ref
    # unclipped sum term for the LoS rows (|h|^2 = U, |j|^2 = I), to show which side of the min binds
    rho = float(bounds.db_to_linear(200.0))
    M = next(m for r, p, m, _ in table.rows if (r, p) == (200.0, "rho^0.4"))
    ref = REFERENCE_SYSTEM
    sinr = 2.0 * ref.U / (rho * ref.I + float(bounds.db_to_linear(ref.n0_db)))
    sum_term = 2 * ref.B * bounds.iota_bar(M, sinr)
    return CheckResult(7, "resolution scaling with jammer power", ok,
                       f"M=ceil(rho^0.4): I_bar(200 dB)={sub:.4g} (< 0.01), sum term {sum_term:.4g}; "
                       f"M=ceil(rho^0.5): I_bar(200 dB)={crit:.4g} vs 0.5*I_bar(100 dB)={0.5 * crit_ref:.4g}")


def _dominance_grid():
    levels = (2, 3, 4, 8, 16)
    sinrs = np.logspace(-6, 2, 40)
    return [(M, float(s)) for M in levels for s in sinrs]


def check_dominance(quick=False, workers=1):
    t0 = time.perf_counter()
    root = SeededRng(8)
    worst_flip = worst_mi = worst_two = worst_ladder = -np.inf
    n_random = 0
    for k, (M, sinr) in enumerate(_dominance_grid()):
        sigma_d_sq = 1.0
        ch = ScalarChannel(sinr * sigma_d_sq, sigma_d_sq)
        gen = root.substream(k).generator()
        bnds = np.sort(gen.normal(0.0, np.sqrt(sigma_d_sq + ch.R), M - 1))
        q = ScalarQuantizer(tuple(bnds))
        n_random += 1
        fb = bounds.f_bar(M, sinr)
        worst_flip = max(worst_flip, flip_probability_numeric(q, ch) - fb)
        two = ScalarChannel(ch.R, sigma_d_sq, "two_point", p=float(gen.uniform(0.05, 1.0)))
        worst_two = max(worst_two, flip_probability_numeric(q, two) - fb)
        worst_mi = max(worst_mi, scalar_conditional_mi_numeric(q, ch) - bounds.iota_bar(M, sinr))
        worst_ladder = max(worst_ladder, fb - bounds.f_bar_simplified(M, sinr))
    search_pts = [(2, 1e-4), (2, 1.0), (4, 1e-4), (4, 1e-2), (8, 1e-3), (3, 10.0)]
    starts, iters = (2, 15) if quick else (8, 40)
    worst_search = -np.inf
    for M, sinr in search_pts:
        best, _ = flip_probability_search(M, ScalarChannel(sinr, 1.0), starts=starts, iterations=iters)
        worst_search = max(worst_search, best - bounds.f_bar(M, sinr))
    elapsed = time.perf_counter() - t0
    ok = (worst_flip <= 1e-6 and worst_two <= 1e-6 and worst_search <= 1e-6
          and worst_mi <= 1e-5 and worst_ladder <= 0 and elapsed < 120.0)
    return CheckResult(8, "per-ADC dominance grid", ok,
                       f"{len(_dominance_grid())} points, {n_random} random quantizers; "
                       f"max(flip - f_bar)={worst_flip:.3g}, two-point {worst_two:.3g}, "
                       f"search {worst_search:.3g} (<= 1e-6); max(MI - iota)={worst_mi:.3g} (<= 1e-5); "
                       f"max(f_bar - f_bar_simplified)={worst_ladder:.3g} (<= 0); {elapsed:.1f} s (< 120 s)")


def check_spread_identity(quick=False, workers=1):
    pts = [(M, float(s)) for M in (2, 4, 16, 256, 1024) for s in np.logspace(-9, 1, 10)]
    worst = max(abs(spread_bound_numeric(M, ScalarChannel(s, 1.0)) - bounds.f_bar(M, s))
                for M, s in pts)
    return CheckResult(9, "spread-bound integral equals closed form", worst <= 1e-6,
                       f"{len(pts)} points, max |quadrature - f_bar|={worst:.3g} (<= 1e-6)")


RHOS = (0.0, 1.0, 1e2, 1e4, 1e6)
N0S = (0.01, 0.1, 1.0)


def tiny_configs(n=50, seed=10):
    """Random tiny systems cycling through the exact and Monte Carlo regimes.

    Yields ``(TinySystem, M_levels, exact)``.
    """
    root = SeededRng(seed)
    shapes = [(1, 1, 1, 2, True), (1, 2, 1, 2, True), (2, 2, 0, 2, True),
              (2, 1, 1, 2, False), (2, 2, 1, 2, False), (2, 1, 1, 4, False),
              (1, 1, 0, 4, False), (1, 2, 1, 4, False)]
    for k in range(n):
        B, U, I, M, exact = shapes[k % len(shapes)]
        cp = sample_rayleigh_pair(root.substream(k), B, U, I)
        gen = root.substream(k, 3).generator()
        yield TinySystem(cp.H, cp.J, RHOS[k % len(RHOS)], N0S[int(gen.integers(len(N0S)))]), M, exact


def check_end_to_end(quick=False, workers=1):
    trials = 20_000 if quick else 100_000
    worst_margin = -np.inf
    counts = {"exact": 0, "mc": 0}
    for k, (ts, M, exact) in enumerate(tiny_configs()):
        B, U, I = ts.H.shape[0], ts.H.shape[1], ts.J.shape[1]
        bound = mutual_info_upper_bound(SystemConfig(B, U, I, ts.rho, ts.n0, M), ts.channels).value
        if exact:
            mi, se = tiny_system_mi_exact(ts), 0.0
            counts["exact"] += 1
        else:
            est = tiny_system_mi_mc(ts, M, trials, SeededRng(100 + k))
            mi, se = est.value, est.stderr
            counts["mc"] += 1
        worst_margin = max(worst_margin, mi - bound - 3 * se)
    noiseless = tiny_system_mi_exact(TinySystem(np.array([[1.0]]), np.zeros((1, 0)), 0.0, 1e-12))
    eps = 2.0 - noiseless
    ok = worst_margin <= 1e-12 and 0 <= eps < 1e-6
    return CheckResult(10, "end-to-end system dominance", ok,
                       f"{counts['exact']} exact + {counts['mc']} Monte Carlo configs, "
                       f"max(MI - I_bar - 3 SE)={worst_margin:.3g} (<= 0); noiseless QPSK = 2 - {eps:.2g} bits")


def check_projection_equivalence(quick=False, workers=1):
    trials = 1_000 if quick else 10_000
    limit = 0.08 if quick else 0.03
    spec = default_spec("unquantized_cdf").with_overrides(system=REFERENCE_SYSTEM, trials=trials, seed=1)
    lower, _, reduced = run_unquantized_cdf(spec, workers=workers)
    ks = ks_2samp(lower.sorted_values, reduced.sorted_values).statistic
    no_rho = all("rho" not in inspect.signature(f).parameters
                 for f in (bounds.unquantized_lower_bound, bounds.jammer_free_mi))
    ok = ks < limit and no_rho
    return CheckResult(11, "jammer nulling equals losing I antennas", ok,
                       f"KS={ks:.4f} over {trials} draws (< {limit}); jammer power absent from API: {no_rho}")


def check_determinism(quick=False, workers=1):
    trials = 300 if quick else 2_000
    spec = default_spec("cdf").with_overrides(system=REFERENCE_SYSTEM, bits_list=(1, 3), trials=trials, seed=7)
    blobs = []
    with tempfile.TemporaryDirectory() as tmp:
        for n_workers in (1, 4):
            paths = []
            for res in run_cdf_experiment(spec, workers=n_workers):
                path = os.path.join(tmp, f"w{n_workers}_{res.label.replace(' ', '_').replace('=', '')}.csv")
                render_csv(res, path)
                paths.append(path)
            blobs.append(b"".join(open(p, "rb").read() for p in paths))
    ok = blobs[0] == blobs[1]
    return CheckResult(12, "CDF output independent of worker count", ok,
                       f"{trials} trials, 1 vs 4 workers: {'byte-identical' if ok else 'DIFFERENT'}")


CHECKS = (check_marker_9bit, check_marker_10bit, check_los_1bit, check_los_2bit,
          check_rayleigh_percentile, check_vanishing, check_resolution_scaling,
          check_dominance, check_spread_identity, check_end_to_end,
          check_projection_equivalence, check_determinism)


def run_verify(quick=False, workers=1, stream=None):
    """Run every check, print one line each, and return the exit status."""
    stream = stream or sys.stdout
    failed = 0
    for check in CHECKS:
        res = check(quick=quick, workers=workers)
        print(res.line(), file=stream, flush=True)
        failed += not res.passed
    print(f"{len(CHECKS) - failed}/{len(CHECKS)} checks passed", file=stream)
    return 1 if failed else 0
