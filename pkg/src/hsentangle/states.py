"""Two-qubit states: Bell and Werner families, Schmidt form, partial operations, PPT."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import dagger, eig_hermitian, hermitian_part, tensor

STATE_TOL = 1e-10
PPT_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)


class InvalidStateError(ValueError):
    """Matrix fails the density-matrix checks (Hermitian, PSD, unit trace)."""


def ket(bits: str) -> np.ndarray:
    """Computational basis vector, e.g. ``ket("01")``."""
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def validate_density(rho, tol: float = STATE_TOL) -> np.ndarray:
    """Check the density-matrix invariants and return the symmetrized matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape not in ((2, 2), (4, 4)):
        raise InvalidStateError(f"expected 2x2 or 4x4 matrix, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidStateError("matrix has non-finite entries")
    if np.max(np.abs(rho - dagger(rho))) > tol:
        raise InvalidStateError("matrix is not Hermitian")
    rho = hermitian_part(rho)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise InvalidStateError(f"trace is {tr!r}, expected 1")
    lo = eig_hermitian(rho).eigenvalues[0]
    if lo < -tol:
        raise InvalidStateError(f"matrix has negative eigenvalue {lo:.3e}")
    return rho


# --- Bell basis --------------------------------------------------------------

_BELL_VECTORS = {
    1: (ket("00") + ket("11")) / np.sqrt(2),
    2: (ket("00") - ket("11")) / np.sqrt(2),
    3: (ket("01") + ket("10")) / np.sqrt(2),
    4: (ket("01") - ket("10")) / np.sqrt(2),
}


def _check_index(i) -> int:
    if i not in _BELL_VECTORS:
        raise ValueError(f"Bell index must be in 1..4, got {i!r}")
    return int(i)


def bell_vector(i: int) -> np.ndarray:
    return _BELL_VECTORS[_check_index(i)].copy()


def bell_projector(i: int) -> np.ndarray:
    return projector(bell_vector(i))


def phi_mix(i: int, j: int) -> np.ndarray:
    """Equal mixture of two distinct Bell projectors."""
    if _check_index(i) == _check_index(j):
        raise ValueError("phi_mix needs two different Bell indices")
    return (bell_projector(i) + bell_projector(j)) / 2


def werner(i: int, eps: float) -> np.ndarray:
    """(1 - eps)/4 * I + eps * Psi_i."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"Werner parameter must lie in [0, 1], got {eps!r}")
    return (1 - eps) / 4 * I4 + eps * bell_projector(i)


# Projectors spanning the triangle used by the pure-state construction.
P00 = projector(ket("00"))
P11 = projector(ket("11"))
P_PLUS = projector(ket("01") + ket("10"))
P_MINUS = projector(ket("01") - ket("10"))


# --- Schmidt form -------------------------------------------------------------

def _is_unitary(U, tol=STATE_TOL) -> bool:
    return np.max(np.abs(dagger(U) @ U - I2)) <= tol


@dataclass(frozen=True)
class SchmidtForm:
    """Pure state (frame1 x frame2)(a|00> + b|11>) with a >= b >= 0."""

    a: float
    b: float
    frame1: np.ndarray = field(default_factory=lambda: I2.copy())
    frame2: np.ndarray = field(default_factory=lambda: I2.copy())

    def __post_init__(self):
        if not (0.0 <= self.b <= self.a + STATE_TOL and self.a <= 1.0 + STATE_TOL):
            raise ValueError("Schmidt coefficients must satisfy 1 >= a >= b >= 0")
        if abs(self.a**2 + self.b**2 - 1.0) > STATE_TOL:
            raise ValueError("Schmidt coefficients must satisfy a^2 + b^2 = 1")
        if not (_is_unitary(self.frame1) and _is_unitary(self.frame2)):
            raise ValueError("Schmidt frames must be unitary")

    @classmethod
    def from_a2(cls, a2: float, frame1=None, frame2=None) -> "SchmidtForm":
        """Build from the squared larger coefficient (values below 1/2 are swapped)."""
        if not 0.0 <= a2 <= 1.0:
            raise ValueError(f"a2 must lie in [0, 1], got {a2!r}")
        a, b = np.sqrt(a2), np.sqrt(1.0 - a2)
        f1 = I2.copy() if frame1 is None else np.asarray(frame1, dtype=complex)
        f2 = I2.copy() if frame2 is None else np.asarray(frame2, dtype=complex)
        if a < b:
            swap = np.array([[0, 1], [1, 0]], dtype=complex)
            a, b, f1, f2 = b, a, f1 @ swap, f2 @ swap
        return cls(float(a), float(b), f1, f2)

    def vector(self) -> np.ndarray:
        core = self.a * ket("00") + self.b * ket("11")
        return tensor(self.frame1, self.frame2) @ core


def pure_vector(a2: float) -> np.ndarray:
    """sqrt(a2)|00> + sqrt(1 - a2)|11>, without reordering the coefficients."""
    return np.sqrt(a2) * ket("00") + np.sqrt(1.0 - a2) * ket("11")


def pure_state(a2: float) -> np.ndarray:
    return projector(pure_vector(a2))


def pure_from_schmidt(s: SchmidtForm) -> np.ndarray:
    return projector(s.vector())


def _fix_phase(v: np.ndarray) -> np.ndarray:
    k = np.flatnonzero(np.abs(v) > 1e-12)[0]
    return v * (abs(v[k]) / v[k])


def schmidt_decompose(psi) -> SchmidtForm:
    """Schmidt form of a normalized two-qubit vector via its first marginal."""
    psi = np.asarray(psi, dtype=complex).reshape(4)
    if abs(np.linalg.norm(psi) - 1.0) > STATE_TOL:
        raise ValueError("state vector must be normalized")
    C = psi.reshape(2, 2)
    dec = eig_hermitian(C @ dagger(C))
    w = np.clip(dec.eigenvalues[::-1], 0.0, None)
    E = dec.eigenvectors[:, ::-1]
    E = np.column_stack([_fix_phase(E[:, 0]), _fix_phase(E[:, 1])])
    a, b = np.sqrt(w)
    f1 = C.T @ np.conj(E[:, 0]) / a
    f1 /= np.linalg.norm(f1)
    if b > 1e-8:
        f2 = C.T @ np.conj(E[:, 1]) / b
        # re-orthogonalize against roundoff
        f2 -= np.vdot(f1, f2) * f1
        f2 /= np.linalg.norm(f2)
    else:
        f2 = np.array([-np.conj(f1[1]), np.conj(f1[0])])
    a_norm = float(a / np.hypot(a, b))
    b_norm = float(np.sqrt(max(0.0, 1.0 - a_norm**2)))
    return SchmidtForm(a_norm, b_norm, E, np.column_stack([f1, f2]))


# --- partial operations ---------------------------------------------------------

def partial_transpose(rho) -> np.ndarray:
    """Transpose the second factor in the computational basis."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("partial_transpose expects a 4x4 matrix")
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def partial_trace(rho, which: int) -> np.ndarray:
    """Trace out subsystem ``which`` (1 or 2) and return the 2x2 remainder."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("partial_trace expects a 4x4 matrix")
    t = rho.reshape(2, 2, 2, 2)
    if which == 1:
        return np.einsum("ijil->jl", t)
    if which == 2:
        return np.einsum("ijkj->ik", t)
    raise ValueError(f"subsystem index must be 1 or 2, got {which!r}")


def min_pt_eigenvalue(rho) -> float:
    return float(eig_hermitian(partial_transpose(rho)).eigenvalues[0])


def is_ppt(rho, tol: float = PPT_TOL) -> bool:
    """Peres test; in two qubits this decides separability."""
    return min_pt_eigenvalue(rho) >= -tol


# --- local channels -----------------------------------------------------------

@dataclass(frozen=True)
class LocalChannel:
    """Product channel given by Kraus operators acting on each qubit."""

    kraus1: Sequence[np.ndarray]
    kraus2: Sequence[np.ndarray]

    def __post_init__(self):
        for ks in (self.kraus1, self.kraus2):
            total = sum(dagger(np.asarray(K)) @ np.asarray(K) for K in ks)
            if np.max(np.abs(total - I2)) > STATE_TOL:
                raise ValueError("Kraus operators are not trace preserving")


def apply_local_channel(rho, ch: LocalChannel) -> np.ndarray:
    out = np.zeros((4, 4), dtype=complex)
    for K in ch.kraus1:
        for L in ch.kraus2:
            KL = tensor(K, L)
            out += KL @ rho @ dagger(KL)
    return validate_density(out)


PAULIS = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def depolarizing_kraus(p: float) -> list[np.ndarray]:
    """Kraus set of rho -> (1 - p) rho + p I/2."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("depolarizing strength must lie in [0, 1]")
    ks = [np.sqrt(1 - 3 * p / 4) * I2]
    ks += [np.sqrt(p / 4) * P for P in PAULIS]
    return ks


def local_unitary(U1, U2) -> LocalChannel:
    return LocalChannel([np.asarray(U1, dtype=complex)], [np.asarray(U2, dtype=complex)])


# --- random sampling helpers ------------------------------------------------------

def random_unitary(rng: np.random.Generator, n: int = 2) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_pure_vector(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_density(rng: np.random.Generator, rank: int = 4) -> np.ndarray:
    """Induced-measure random two-qubit state of the given rank."""
    G = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    rho = G @ dagger(G)
    return hermitian_part(rho / np.trace(rho).real)
