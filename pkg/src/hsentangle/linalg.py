"""Small dense complex linear algebra for one- and two-qubit operators.

Matrices are plain ``numpy`` arrays of shape (2, 2) or (4, 4).  Two-qubit
operators use the basis order |00>, |01>, |10>, |11>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10
JACOBI_OFFDIAG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
SUPPORT_TOL = 1e-12


class DimensionError(ValueError):
    """Operands have incompatible or unsupported shapes."""


class NotHermitianError(ValueError):
    """Input deviates from its adjoint by more than the allowed tolerance."""


def _square(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] not in (2, 4):
        raise DimensionError(f"expected a 2x2 or 4x4 matrix, got shape {A.shape}")
    return A


def dagger(A: np.ndarray) -> np.ndarray:
    return np.conj(A).T


def hermitian_part(A: np.ndarray) -> np.ndarray:
    """Return (A + A^dagger) / 2."""
    return (A + dagger(A)) / 2


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product tr(A^dagger B)."""
    A, B = _square(A), _square(B)
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch: {A.shape} vs {B.shape}")
    return complex(np.vdot(A, B))


def hs_norm_sq(A) -> float:
    """Squared Hilbert-Schmidt norm tr(A^dagger A)."""
    A = _square(A)
    return float(np.vdot(A, A).real)


def tensor(A, B) -> np.ndarray:
    """Kronecker product of two single-qubit operators."""
    A, B = _square(A), _square(B)
    if A.shape != (2, 2) or B.shape != (2, 2):
        raise DimensionError("tensor expects two 2x2 factors")
    return np.kron(A, B)


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ dagger(V)


def _offdiag_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.sqrt(np.vdot(off, off).real))


def eig_hermitian(A, tol: float = HERMITIAN_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    The input is symmetrized first; inputs further than ``tol`` (max-abs) from
    Hermitian raise :class:`NotHermitianError`.
    """
    A = _square(A)
    if np.max(np.abs(A - dagger(A))) > tol:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    A = hermitian_part(A).copy()
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    threshold = JACOBI_OFFDIAG_TOL * max(1.0, np.sqrt(hs_norm_sq(A)))

    for _ in range(JACOBI_MAX_SWEEPS):
        if _offdiag_norm(A) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                theta = (A[q, q].real - A[p, p].real) / (2 * r)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) block
                G = np.eye(n, dtype=complex)
                G[p, p] = c
                G[p, q] = s
                G[q, p] = -s * np.conj(phase)
                G[q, q] = c * np.conj(phase)
                A = dagger(G) @ A @ G
                A[p, q] = A[q, p] = 0.0
                V = V @ G

    w = np.diag(A).real
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order].copy(), V[:, order].copy())


def eigvalsh(A) -> np.ndarray:
    return eig_hermitian(A).eigenvalues


def min_eigvec_2x2(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form smallest eigenpair for a batch of 2x2 Hermitian matrices.

    ``H`` has shape (..., 2, 2).  Returns (values, unit vectors).
    """
    a = H[..., 0, 0].real
    d = H[..., 1, 1].real
    b = H[..., 0, 1]
    half = (a - d) / 2
    rad = np.sqrt(half**2 + np.abs(b) ** 2)
    lam = (a + d) / 2 - rad
    # (H - lam) v = 0, using whichever row is better conditioned
    v1 = np.stack([-b, (a - lam).astype(complex)], axis=-1)
    v2 = np.stack([(d - lam).astype(complex), -np.conj(b)], axis=-1)
    n1 = np.linalg.norm(v1, axis=-1)
    n2 = np.linalg.norm(v2, axis=-1)
    use1 = (n1 >= n2)[..., None]
    v = np.where(use1, v1, v2)
    nv = np.where(use1[..., 0], n1, n2)
    degenerate = nv < 1e-300
    nv = np.where(degenerate, 1.0, nv)
    v = v / nv[..., None]
    if np.any(degenerate):
        v = np.where(degenerate[..., None], np.array([1.0, 0.0], dtype=complex), v)
    return lam, v


@dataclass(frozen=True)
class SpectralLog:
    """Base-2 logarithm restricted to the support, plus the support projector."""

    log: np.ndarray
    support: np.ndarray
    rank: int


def matrix_log2(A, support_tol: float = SUPPORT_TOL) -> SpectralLog:
    """Spectral log2 of a PSD matrix; kernel directions map to 0."""
    dec = eig_hermitian(A)
    w, V = dec.eigenvalues, dec.eigenvectors
    if w[0] < -support_tol:
        raise ValueError(f"matrix has negative eigenvalue {w[0]:.3e}")
    on = w > support_tol
    logw = np.zeros_like(w)
    logw[on] = np.log2(w[on])
    Vs = V[:, on]
    return SpectralLog((V * logw) @ dagger(V), Vs @ dagger(Vs), int(on.sum()))


def matrix_exp2(A) -> np.ndarray:
    """2**A for Hermitian A."""
    dec = eig_hermitian(A)
    V = dec.eigenvectors
    return (V * np.exp2(dec.eigenvalues)) @ dagger(V)
