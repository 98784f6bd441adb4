import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quantjam.exceptions import DimensionError, DomainError, NumericError
from quantjam.linalg import (SeededRng, hermitian_logdet_capacity, orthonormal_complement,
                             row_norm_sq, sample_complex_gaussian)


def _logdet_bxb(G, n0):
    B = G.shape[0]
    sign, val = np.linalg.slogdet(np.eye(B) + G @ G.conj().T / n0)
    assert sign.real > 0
    return val / np.log(2.0)


def test_logdet_examples():
    assert hermitian_logdet_capacity(np.eye(2), 1.0) == pytest.approx(2.0, abs=1e-12)
    assert hermitian_logdet_capacity(np.array([[np.sqrt(3.0)]]), 1.0) == pytest.approx(2.0, abs=1e-12)
    assert hermitian_logdet_capacity(np.zeros((4, 2)), 1e-3) == 0.0


def test_logdet_errors():
    with pytest.raises(DomainError):
        hermitian_logdet_capacity(np.eye(2), 0.0)
    with pytest.raises((NumericError, ValueError)):
        hermitian_logdet_capacity(np.array([[np.nan, 0.0], [0.0, 1.0]]), 1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32 - 1),
       st.sampled_from([1e-3, 1.0, 10.0]))
def test_logdet_matches_other_gram_side(B, U, seed, n0):
    G = sample_complex_gaussian(SeededRng(seed), B, U)
    assert hermitian_logdet_capacity(G, n0) == pytest.approx(_logdet_bxb(G, n0), abs=1e-9)
    assert hermitian_logdet_capacity(G.conj().T, n0) == pytest.approx(_logdet_bxb(G, n0), abs=1e-9)


def test_complement_of_first_axis():
    U = orthonormal_complement(np.array([[1.0], [0.0]]))
    assert U.shape == (2, 1)
    assert abs(U[0, 0]) < 1e-15 and abs(abs(U[1, 0]) - 1.0) < 1e-15


def test_complement_of_zero_column_is_whole_space():
    U = orthonormal_complement(np.zeros((5, 1)))
    assert U.shape == (5, 5)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(5), atol=1e-12)


def test_complement_residuals_random_instances():
    root = SeededRng(3)
    for k in range(100):
        gen = root.substream(k, 0).generator()
        B = int(gen.integers(2, 33))
        I = int(gen.integers(1, min(4, B - 1) + 1))
        J = sample_complex_gaussian(root.substream(k, 1), B, I)
        U = orthonormal_complement(J)
        assert U.shape == (B, B - I)
        assert np.max(np.abs(U.conj().T @ J)) <= 1e-10
        assert np.max(np.abs(U.conj().T @ U - np.eye(B - I))) <= 1e-10


def test_complement_rank_deficient_input():
    j = sample_complex_gaussian(SeededRng(1), 6, 1)
    J = np.hstack([j, 2 * j])
    assert orthonormal_complement(J).shape == (6, 5)


def test_complement_full_span_rejected():
    with pytest.raises(DimensionError):
        orthonormal_complement(np.eye(3))


def test_sampling_moments():
    z = sample_complex_gaussian(SeededRng(7), 1000, 1000, 1.0).ravel()
    assert abs(z.mean()) < 4e-3
    assert np.mean(np.abs(z) ** 2) == pytest.approx(1.0, rel=0.01)
    z2 = sample_complex_gaussian(SeededRng(7, 1), 1000, 1000, 2.0).ravel()
    assert np.var(z2.real) == pytest.approx(1.0, rel=0.01)
    assert np.var(z2.imag) == pytest.approx(1.0, rel=0.01)


def test_sampling_deterministic_and_stream_separated():
    a = sample_complex_gaussian(SeededRng(11, 4), 3, 5)
    b = sample_complex_gaussian(SeededRng(11, 4), 3, 5)
    c = sample_complex_gaussian(SeededRng(11, 5), 3, 5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert np.array_equal(SeededRng(11).substream(4).generator().random(3),
                          SeededRng(11, 4).generator().random(3))


def test_sampling_rejects_bad_variance():
    with pytest.raises(DomainError):
        sample_complex_gaussian(SeededRng(0), 2, 2, 0.0)


def test_row_norm_sq():
    assert row_norm_sq(np.eye(2), 1) == 1.0
    assert row_norm_sq(np.array([[np.exp(0.3j), np.exp(-2.1j)]]), 0) == pytest.approx(2.0)
    assert row_norm_sq(np.zeros((3, 2)), 2) == 0.0
    with pytest.raises(IndexError):
        row_norm_sq(np.eye(2), 2)
