"""Dense complex linear algebra and seeded Gaussian sampling.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Random streams
come from :class:`SeededRng`, a value type over numpy's counter-based Philox
generator: a ``(seed, stream)`` pair always yields the same draws, and
per-trial sub-streams are derived by index instead of by advancing a shared
state.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import DimensionError, DomainError, NumericError, ShapeError

__all__ = [
    "SeededRng",
    "as_complex_matrix",
    "hermitian_logdet_capacity",
    "orthonormal_complement",
    "sample_complex_gaussian",
    "row_norm_sq",
]

RANK_RTOL = 1e-12
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SeededRng:
    """Reproducible random stream identified by a seed and a stream path.

    ``stream`` is a tuple of non-negative integers; an int is accepted and
    wrapped. :meth:`substream` appends indices, so ``rng.substream(t)``
    for trial ``t`` never overlaps ``rng.substream(t + 1)``.
    """

    seed: int
    stream: tuple = ()

    def __post_init__(self):
        if isinstance(self.stream, (int, np.integer)):
            object.__setattr__(self, "stream", (int(self.stream),))
        stream = tuple(int(s) for s in self.stream)
        if not 0 <= int(self.seed) <= _MASK64 or any(not 0 <= s <= _MASK64 for s in stream):
            raise DomainError("seed and stream indices must be unsigned 64-bit integers")
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "stream", stream)

    def substream(self, *index):
        return SeededRng(self.seed, self.stream + tuple(int(i) for i in index))

    def generator(self):
        """A fresh ``numpy.random.Generator`` positioned at the stream start."""
        seq = np.random.SeedSequence(self.seed, spawn_key=self.stream)
        return np.random.Generator(np.random.Philox(seq))


def as_complex_matrix(a, name="matrix"):
    """Validate and convert ``a`` to a finite 2-D ``complex128`` array."""
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NumericError(f"{name} has non-finite entries")
    return arr


def hermitian_logdet_capacity(G, n0):
    """``log2 det(I + G G^H / n0)`` via a Cholesky factorization.

    Returns bits. The determinant is never formed; the log of the factor
    diagonal is summed instead.
    """
    if not n0 > 0:
        raise DomainError("n0 must be positive")
    G = np.asarray(G, dtype=complex)
    if G.ndim != 2:
        raise ShapeError(f"G must be 2-D, got shape {G.shape}")
    gram = np.eye(G.shape[0]) + (G @ G.conj().T) / n0
    try:
        L = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise NumericError("Gram matrix is not positive definite") from exc
    diag = np.real(np.diag(L))
    if not np.all(np.isfinite(diag)):
        raise NumericError("Cholesky factor has non-finite diagonal")
    return max(0.0, float(2.0 * np.sum(np.log2(diag))))


def orthonormal_complement(J):
    """Orthonormal basis ``U_perp`` (``B x (B - r)``) of ``col(J)``'s complement.

    Uses a column-pivoted Householder QR of ``J``; the trailing ``B - r``
    columns of the full unitary factor span the complement, where ``r`` is
    the numerical rank (singular values above ``1e-12`` times the largest).
    """
    J = as_complex_matrix(J, "J")
    B, n = J.shape
    if n == 0:
        return np.eye(B, dtype=complex)
    sv = np.linalg.svd(J, compute_uv=False)
    r = int(np.sum(sv > RANK_RTOL * sv[0])) if sv[0] > 0 else 0
    if r >= B:
        raise DimensionError("col(J) spans the whole space; no orthogonal complement")
    if r == 0:
        return np.eye(B, dtype=complex)
    Q, _, _ = scipy.linalg.qr(J, mode="full", pivoting=True)
    return Q[:, r:]


def sample_complex_gaussian(rng, rows, cols, variance=1.0):
    """I.i.d. circularly-symmetric complex Gaussian matrix.

    Real and imaginary parts are independent ``N(0, variance / 2)``.
    """
    if not variance > 0:
        raise DomainError("variance must be positive")
    if rows < 0 or cols < 0:
        raise ShapeError("matrix dimensions must be non-negative")
    parts = rng.generator().standard_normal((rows, cols, 2))
    scale = np.sqrt(variance / 2.0)
    return scale * (parts[..., 0] + 1j * parts[..., 1])


def row_norm_sq(A, b):
    """Squared Euclidean norm of row ``b`` (0-based) of ``A``."""
    A = np.asarray(A)
    if not 0 <= b < A.shape[0]:
        raise IndexError(f"row index {b} out of range for {A.shape[0]} rows")
    row = A[b]
    return float(np.real(np.vdot(row, row)))
