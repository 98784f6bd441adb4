import inspect

import numpy as np
import pytest

from quantjam import channels
from quantjam.bounds import SystemConfig, mutual_info_upper_bound
from quantjam.channels import (ChannelModel, sample_los_pair, sample_pair, sample_rayleigh_pair,
                               ula_steering)
from quantjam.exceptions import DomainError
from quantjam.linalg import SeededRng


def test_steering_examples():
    np.testing.assert_allclose(ula_steering(np.pi / 2, 4), np.ones(4), atol=1e-15)
    np.testing.assert_allclose(ula_steering(0.0, 2), [1.0, -1.0], atol=1e-15)


def test_rayleigh_deterministic():
    a = sample_rayleigh_pair(SeededRng(3, 9), 16, 2, 1)
    b = sample_rayleigh_pair(SeededRng(3, 9), 16, 2, 1)
    assert np.array_equal(a.H, b.H) and np.array_equal(a.J, b.J)


def test_rayleigh_row_norm_mean():
    root = SeededRng(21)
    norms = np.array([np.sum(np.abs(sample_rayleigh_pair(root.substream(t), 4, 2, 1).H[0]) ** 2)
                      for t in range(10_000)])
    assert norms.mean() == pytest.approx(2.0, rel=0.05)


def test_rayleigh_without_jammer():
    cp = sample_rayleigh_pair(SeededRng(0), 4, 2, 0)
    assert cp.J.shape == (4, 0)


def test_los_forced_broadside():
    cp = sample_los_pair(SeededRng(0), 3, 1, 1, angles=np.full(2, np.pi / 2))
    np.testing.assert_allclose(cp.H, np.ones((3, 1)), atol=1e-15)


def test_los_deterministic_and_unit_modulus():
    model = ChannelModel("los_ula")
    a = sample_los_pair(SeededRng(8), 16, 2, 1, model)
    b = sample_los_pair(SeededRng(8), 16, 2, 1, model)
    assert np.array_equal(a.H, b.H) and np.array_equal(a.J, b.J)
    np.testing.assert_allclose(np.abs(a.H), 1.0)
    np.testing.assert_allclose(np.abs(a.J), 1.0)


def test_los_bound_sinr_is_draw_independent():
    model = ChannelModel("los_ula")
    sums = set()
    for t in range(20):
        cp = sample_los_pair(SeededRng(t), 16, 2, 1, model)
        res = mutual_info_upper_bound(SystemConfig.from_db(16, 2, 1, 60, -30, 8), cp)
        assert np.ptp(res.per_adc_sinr) <= 1e-14 * res.per_adc_sinr[0]
        sums.add(round(res.sum_term, 10))
    assert len(sums) == 1


def test_sample_pair_dispatch():
    cp = sample_pair(SeededRng(1), 5, 2, 1, ChannelModel("rayleigh"))
    assert cp.H.shape == (5, 2) and cp.J.shape == (5, 1)
    cp = sample_pair(SeededRng(1), 5, 2, 1, ChannelModel("los_ula"))
    np.testing.assert_allclose(np.abs(cp.H), 1.0)


@pytest.mark.parametrize("kw", [dict(tag="other"), dict(tag="los_ula", sector_half_angle=0.0),
                                dict(tag="los_ula", sector_half_angle=2.0)])
def test_model_validation(kw):
    with pytest.raises(DomainError):
        ChannelModel(**kw)


def test_no_path_loss_parameter():
    for fn in (sample_rayleigh_pair, sample_los_pair, sample_pair):
        assert "distance" not in inspect.signature(fn).parameters
    assert not hasattr(channels, "path_loss")
