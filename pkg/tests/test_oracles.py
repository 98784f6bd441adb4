import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import multivariate_normal

from quantjam.bounds import SystemConfig, f_bar, iota_bar, mutual_info_upper_bound
from quantjam.channels import sample_rayleigh_pair
from quantjam.exceptions import DomainError, UnsupportedConfigurationError
from quantjam.linalg import SeededRng
from quantjam.oracles import (ScalarChannel, ScalarQuantizer, TinySystem, boundary_distance,
                              conditional_flip_probability, flip_probability_numeric,
                              flip_probability_search, graded_edges, projection_equivalence_check,
                              quantize, romberg_panels, scalar_conditional_mi_numeric,
                              spread_bound_numeric, tiny_system_mi_exact, tiny_system_mi_mc)


def test_quantize_examples():
    assert quantize(ScalarQuantizer((0.0,)), -3.0) == 0
    q = ScalarQuantizer((-1.0, 0.0, 1.0))
    assert q.levels == 4
    assert quantize(q, 0.5) == 2
    assert quantize(q, 1.0) == 3
    np.testing.assert_array_equal(quantize(q, np.array([-2.0, -1.0, 5.0])), [0, 1, 3])


def test_boundary_distance_examples():
    q = ScalarQuantizer((-1.0, 0.0, 1.0))
    assert boundary_distance(q, 0.3) == pytest.approx(0.3)
    assert boundary_distance(ScalarQuantizer((0.0,)), -5.0) == 5.0
    assert boundary_distance(q, -1.0) == 0.0


@pytest.mark.parametrize("bnds", [(), (1.0, 1.0), (2.0, 1.0), (0.0, math.inf)])
def test_quantizer_validation(bnds):
    with pytest.raises(DomainError):
        ScalarQuantizer(bnds)


@pytest.mark.parametrize("kw", [dict(R=-1.0, sigma_d_sq=1.0), dict(R=1.0, sigma_d_sq=0.0),
                                dict(R=1.0, sigma_d_sq=1.0, r_dist="cauchy"),
                                dict(R=1.0, sigma_d_sq=1.0, r_dist="two_point", p=0.0)])
def test_channel_validation(kw):
    with pytest.raises(DomainError):
        ScalarChannel(**kw)


def test_romberg_on_known_integrals():
    assert romberg_panels(np.exp, np.array([0.0, 1.0])) == pytest.approx(math.e - 1, rel=1e-12)
    # jump sitting exactly on a panel edge
    step = romberg_panels(lambda x: (x >= 0.3).astype(float), np.array([0.0, 0.3, 1.0]))
    assert step == pytest.approx(0.7, rel=1e-12)
    edges = graded_edges([0.0], 1.0, -10.0, 10.0)
    assert np.all(np.diff(edges) > 0) and edges[0] == -10.0 and edges[-1] == 10.0


def test_flip_probability_orthant_example():
    ch = ScalarChannel(1.0, 1.0)
    q = ScalarQuantizer((0.0,))
    assert flip_probability_numeric(q, ch) == pytest.approx(0.25, abs=1e-9)
    assert flip_probability_numeric(q, ScalarChannel(0.0, 1.0)) == 0.0


@pytest.mark.parametrize("R, s2, gamma", [(0.3, 1.0, 0.4), (2.0, 0.5, -0.7), (1e-3, 1.0, 0.0)])
def test_flip_probability_matches_bivariate_normal(R, s2, gamma):
    # flip iff d and d + r lie on opposite sides of gamma
    cov = [[s2, s2], [s2, s2 + R]]
    mvn = multivariate_normal(mean=[0.0, 0.0], cov=cov)
    both_below = mvn.cdf([gamma, gamma])
    p_d = 0.5 * math.erfc(-gamma / math.sqrt(2 * s2))
    p_y = 0.5 * math.erfc(-gamma / math.sqrt(2 * (s2 + R)))
    expected = p_d + p_y - 2 * both_below
    got = flip_probability_numeric(ScalarQuantizer((gamma,)), ScalarChannel(R, s2))
    assert got == pytest.approx(expected, abs=1e-6)


def test_two_point_flip_against_sampling():
    q = ScalarQuantizer((-0.5, 0.2, 1.1))
    ch = ScalarChannel(0.4, 1.0, "two_point", p=0.3)
    gen = np.random.default_rng(0)
    n = 400_000
    d = gen.normal(0.0, 1.0, n)
    a = math.sqrt(ch.R / ch.p)
    r = gen.choice([a, -a, 0.0], size=n, p=[ch.p / 2, ch.p / 2, 1 - ch.p])
    mc = np.mean(quantize(q, d + r) != quantize(q, d))
    assert flip_probability_numeric(q, ch) == pytest.approx(mc, abs=4e-3)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=6, unique=True),
       st.floats(1e-6, 10.0), st.floats(-8.0, 8.0), st.floats(0.05, 1.0),
       st.sampled_from(["gaussian", "two_point"]))
def test_markov_inequality(bnds, R, x, p, dist):
    bnds = sorted(bnds)
    if np.any(np.diff(bnds) <= 1e-9):
        return
    q = ScalarQuantizer(tuple(bnds))
    ch = ScalarChannel(R, 1.0, dist, p)
    delta = boundary_distance(q, x)
    cap = 1.0 if delta ** 2 == 0 else min(1.0, R / delta ** 2)
    assert conditional_flip_probability(q, ch, x) <= cap + 1e-9


def test_two_point_with_p_one_has_power_r():
    ch = ScalarChannel(0.7, 1.0, "two_point", p=1.0)
    a = math.sqrt(ch.R / ch.p)
    assert ch.p * a ** 2 == pytest.approx(ch.R, rel=1e-15)
    q = ScalarQuantizer.uniform(4, 1.0)
    assert flip_probability_numeric(q, ch) <= f_bar(4, ch.sinr) + 1e-6


def test_search_examples():
    best, q = flip_probability_search(2, ScalarChannel(1.0, 1.0), starts=8, iterations=60)
    assert best == pytest.approx(0.25, abs=1e-6)
    assert abs(q.boundaries[0]) < 1e-2
    best0, _ = flip_probability_search(2, ScalarChannel(0.0, 1.0), starts=2, iterations=5)
    assert best0 == 0.0
    best4, _ = flip_probability_search(4, ScalarChannel(1e-4, 1.0), starts=8, iterations=60)
    assert best4 <= f_bar(4, 1e-4)


def test_search_deterministic():
    a = flip_probability_search(3, ScalarChannel(0.1, 1.0), starts=3, iterations=20, seed=5)
    b = flip_probability_search(3, ScalarChannel(0.1, 1.0), starts=3, iterations=20, seed=5)
    assert a[0] == b[0] and a[1] == b[1]


def test_spread_bound_examples():
    assert spread_bound_numeric(2, ScalarChannel(1.0, 1.0)) == pytest.approx(f_bar(2, 1.0), abs=1e-9)
    assert spread_bound_numeric(4, ScalarChannel(0.0, 1.0)) == 0.0
    s = 10 ** -7.4
    assert spread_bound_numeric(512, ScalarChannel(s, 1.0)) == pytest.approx(f_bar(512, s), abs=1e-6)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 64), st.floats(1e-6, 1e2), st.floats(0.1, 10.0))
def test_spread_bound_identity(M, sinr, s2):
    ch = ScalarChannel(sinr * s2, s2)
    assert spread_bound_numeric(M, ch) == pytest.approx(f_bar(M, sinr), abs=1e-6)


def test_scalar_mi_examples():
    q = ScalarQuantizer((0.0,))
    assert scalar_conditional_mi_numeric(q, ScalarChannel(1e6, 1.0)) > 0.99
    assert scalar_conditional_mi_numeric(q, ScalarChannel(0.0, 1.0)) == 0.0


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 8), st.floats(1e-5, 1e2), st.integers(0, 2**31))
def test_scalar_mi_below_iota(M, sinr, seed):
    gen = np.random.default_rng(seed)
    bnds = np.sort(gen.normal(0.0, math.sqrt(1 + sinr), M - 1))
    if np.any(np.diff(bnds) <= 1e-9):
        return
    q = ScalarQuantizer(tuple(bnds))
    ch = ScalarChannel(sinr, 1.0)
    mi = scalar_conditional_mi_numeric(q, ch)
    assert mi <= iota_bar(M, sinr, "exact") + 1e-5
    assert iota_bar(M, sinr, "exact") <= iota_bar(M, sinr, "simplified")


def test_tiny_exact_examples():
    noiseless = TinySystem(np.array([[1.0]]), np.zeros((1, 0)), 0.0, 1e-12)
    assert 0 <= 2.0 - tiny_system_mi_exact(noiseless) < 1e-6
    dead = TinySystem(np.array([[0.0]]), np.array([[1.0]]), 1.0, 1.0)
    assert tiny_system_mi_exact(dead) == pytest.approx(0.0, abs=1e-15)
    jammed = TinySystem(np.array([[1.0]]), np.array([[1.0]]), 1e6, 1e-3)
    bound = mutual_info_upper_bound(SystemConfig(1, 1, 1, 1e6, 1e-3, 2), jammed.channels).value
    mi = tiny_system_mi_exact(jammed)
    assert mi <= bound and mi < 0.05


def test_tiny_exact_rejects_correlated_components():
    ts = TinySystem(np.ones((2, 1)), np.ones((2, 1)), 1.0, 1.0)
    with pytest.raises(UnsupportedConfigurationError):
        tiny_system_mi_exact(ts)
    with pytest.raises(UnsupportedConfigurationError):
        TinySystem(np.ones((3, 1)), np.ones((3, 1)), 1.0, 1.0)


def test_tiny_mc_agrees_with_exact():
    cp = sample_rayleigh_pair(SeededRng(2), 1, 2, 1)
    ts = TinySystem(cp.H, cp.J, 1.0, 0.1)
    est = tiny_system_mi_mc(ts, 2, 100_000, SeededRng(4))
    assert abs(est.value - tiny_system_mi_exact(ts)) <= 3 * est.stderr
    assert est.stderr > 0


def test_tiny_mc_silent_jammer_matches_jammer_free():
    cp = sample_rayleigh_pair(SeededRng(6), 2, 1, 1)
    ts = TinySystem(cp.H, cp.J, 0.0, 0.3)
    est = tiny_system_mi_mc(ts, 2, 100_000, SeededRng(1))
    exact = tiny_system_mi_exact(TinySystem(cp.H, np.zeros((2, 0)), 0.0, 0.3))
    assert abs(est.value - exact) <= 3 * est.stderr


def test_tiny_mc_dominated_by_bound():
    cp = sample_rayleigh_pair(SeededRng(11), 2, 1, 1)
    ts = TinySystem(cp.H, cp.J, 1e4, 0.1)
    est = tiny_system_mi_mc(ts, 2, 100_000, SeededRng(3))
    bound = mutual_info_upper_bound(SystemConfig(2, 1, 1, 1e4, 0.1, 2), ts.channels).value
    assert est.value <= bound + 3 * est.stderr


def test_tiny_mc_deterministic_and_alphabet_limit():
    ts = TinySystem(np.ones((1, 1)), np.ones((1, 1)), 1.0, 1.0)
    a = tiny_system_mi_mc(ts, 2, 2_000, SeededRng(9))
    b = tiny_system_mi_mc(ts, 2, 2_000, SeededRng(9))
    assert a == b
    big = TinySystem(np.ones((2, 1)), np.ones((2, 1)), 1.0, 1.0)
    with pytest.raises(UnsupportedConfigurationError):
        tiny_system_mi_mc(big, 8, 1_000)


def test_projection_check_moments():
    rep = projection_equivalence_check(SeededRng(1), 16, 2, 1, 3_000)
    assert rep.max_abs_mean < 0.1
    assert rep.max_var_deviation < 0.1
    assert rep.ks_distance < 0.05


def test_projection_extreme_case():
    rep = projection_equivalence_check(SeededRng(2), 4, 1, 3, 4_000)
    assert rep.max_var_deviation < 0.08
