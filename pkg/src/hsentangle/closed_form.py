"""Exact basepoints and HS entanglement for Bell mixtures and pure states.

Pure states a|00> + b|11> split into two regimes.  For a^2 in the central
interval [1/2 - sqrt(5)/6, 1/2 + sqrt(5)/6] the basepoint is the orthogonal
projection onto the plane {tr rho = 1, tr(P_-^T2 rho) = 0}.  Outside it that
projection is no longer positive and the basepoint is taken on the parabola
of rank-deficient states in the triangle conv{P_00, P_11, P_+^T2}, at the
parameter solving a cubic; that regime is conjectural and flagged as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .linalg import dagger, eig_hermitian, hs_norm_sq, tensor
from .states import (
    I4,
    P00,
    P11,
    P_MINUS,
    P_PLUS,
    SchmidtForm,
    bell_projector,
    partial_transpose,
    phi_mix,
    projector,
    pure_vector,
    schmidt_decompose,
    werner,
)

SQRT5_6 = np.sqrt(5.0) / 6.0
CENTRAL_LO = 0.5 - SQRT5_6
CENTRAL_HI = 0.5 + SQRT5_6

P_PLUS_T2 = partial_transpose(P_PLUS)
P_MINUS_T2 = partial_transpose(P_MINUS)


class Regime(str, Enum):
    BELL_MIXTURE = "bell_mixture"
    PURE_CENTRAL = "pure_central"
    PURE_EDGE_CONJECTURE = "pure_edge_conjecture"
    SEPARABLE = "separable"


@dataclass(frozen=True)
class BasepointResult:
    entanglement: float
    basepoint: np.ndarray
    regime: Regime
    state: np.ndarray
    parameter: Optional[float] = None

    @property
    def proven(self) -> bool:
        return self.regime is not Regime.PURE_EDGE_CONJECTURE


@dataclass(frozen=True)
class BellMixture:
    """lambdas[i-1] Psi_i + sum_{j != i} lambdas[j-1] Phi_ij."""

    i: int
    lambdas: Sequence[float]

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float)
        if self.i not in (1, 2, 3, 4):
            raise ValueError(f"Bell index must be in 1..4, got {self.i!r}")
        if lam.shape != (4,):
            raise ValueError("a Bell mixture needs exactly four weights")
        if np.any(lam < 0) or abs(lam.sum() - 1.0) > 1e-10:
            raise ValueError("Bell mixture weights must be non-negative and sum to 1")
        object.__setattr__(self, "lambdas", tuple(float(x) for x in lam))

    @property
    def weight(self) -> float:
        return self.lambdas[self.i - 1]

    def _combine(self, head: np.ndarray) -> np.ndarray:
        out = self.weight * head
        for j in range(1, 5):
            if j != self.i:
                out = out + self.lambdas[j - 1] * phi_mix(self.i, j)
        return out

    def state(self) -> np.ndarray:
        return self._combine(bell_projector(self.i))

    @classmethod
    def from_werner(cls, i: int, eps: float) -> "BellMixture":
        """Rewrite W_{psi_i, eps} with eps >= 1/3 in Bell-mixture form."""
        if not 1 / 3 <= eps <= 1:
            raise ValueError("only Werner states with eps in [1/3, 1] are Bell mixtures of this form")
        lam = [(1 - eps) / 2] * 4
        lam[i - 1] = (3 * eps - 1) / 2
        return cls(i, lam)


def ehs_bell_mixture(m: BellMixture) -> BasepointResult:
    sigma = m.state()
    base = m._combine(werner(m.i, 1 / 3))
    lam = m.weight
    regime = Regime.BELL_MIXTURE if lam > 0 else Regime.SEPARABLE
    return BasepointResult(lam**2 / 3, base, regime, sigma)


def _frame(frames) -> np.ndarray:
    if frames is None:
        return I4
    U1, U2 = frames
    return tensor(U1, U2)


def projected_basepoint(a2: float) -> np.ndarray:
    """Orthogonal projection of the pure state onto {tr = 1, tr(P_-^T2 rho) = 0}.

    Equals sigma - ab (4 Psi_1 - 1)/3 and is positive only in the central interval.
    """
    a, b = np.sqrt(a2), np.sqrt(1 - a2)
    return projector(pure_vector(a2)) - a * b * (4 * bell_projector(1) - I4) / 3


def projected_min_eigenvalue(a2: float) -> float:
    """Analytic smallest eigenvalue of :func:`projected_basepoint`."""
    a2 = float(a2)
    b2 = 1 - a2
    ab = np.sqrt(a2 * b2)
    return (3 - 2 * ab - np.sqrt(9 * a2**2 - 14 * a2 * b2 + 9 * b2**2)) / 6


def in_central_interval(a2: float) -> bool:
    return CENTRAL_LO <= a2 <= CENTRAL_HI


def _check_a2(a2: float):
    if not 0.0 <= a2 <= 1.0:
        raise ValueError(f"a2 must lie in [0, 1], got {a2!r}")


def ehs_pure_central(a2: float, frames=None) -> BasepointResult:
    """HS entanglement 4a^2b^2/3 of a pure state in the central Schmidt interval."""
    _check_a2(a2)
    if not in_central_interval(a2):
        raise ValueError(f"a2={a2!r} lies outside the central interval; use ehs_pure_edge")
    U = _frame(frames)
    sigma = U @ projector(pure_vector(a2)) @ dagger(U)
    base = U @ projected_basepoint(a2) @ dagger(U)
    return BasepointResult(4 * a2 * (1 - a2) / 3, base, Regime.PURE_CENTRAL, sigma)


def parabola_point(s: float) -> np.ndarray:
    """s^2 P_00 + (1-s)^2 P_11 + 2 s(1-s) P_+^T2, a rank-3 state for 0 < s < 1."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"parabola parameter must lie in [0, 1], got {s!r}")
    return s**2 * P00 + (1 - 2 * s + s**2) * P11 + 2 * (s - s**2) * P_PLUS_T2


def cubic_coefficients(a2: float) -> tuple[float, float, float, float]:
    """Coefficients (c3, c2, c1, c0) of the stationarity cubic for distance to the parabola."""
    a, b = np.sqrt(a2), np.sqrt(1 - a2)
    return 6.0, -9.0, 5 - a * a + 2 * a * b - b * b, -1 - a * b + b * b


def _cubic_real_roots(c3, c2, c1, c0) -> list[float]:
    """Real roots by Cardano / trigonometric form, then two Newton steps each."""
    A, B, C = c2 / c3, c1 / c3, c0 / c3
    p = B - A * A / 3
    q = 2 * A**3 / 27 - A * B / 3 + C
    disc = (q / 2) ** 2 + (p / 3) ** 3
    shift = -A / 3
    if disc > 0:
        r = np.sqrt(disc)
        xs = [float(np.cbrt(-q / 2 + r) + np.cbrt(-q / 2 - r))]
    elif p == 0:
        xs = [0.0]
    else:
        m = 2 * np.sqrt(-p / 3)
        arg = np.clip(3 * q / (p * m), -1.0, 1.0)
        phi = np.arccos(arg) / 3
        xs = [float(m * np.cos(phi - 2 * np.pi * k / 3)) for k in range(3)]

    roots = []
    for x in xs:
        t = x + shift
        for _ in range(2):
            f = ((c3 * t + c2) * t + c1) * t + c0
            df = (3 * c3 * t + 2 * c2) * t + c1
            if df == 0 or f == 0:
                break
            t -= f / df
        roots.append(t)
    return roots


def solve_edge_cubic(a2: float) -> float:
    """Admissible root: real, in [0, 1], PSD parabola point closest to the state."""
    sigma = projector(pure_vector(a2))
    best = None
    for t in _cubic_real_roots(*cubic_coefficients(a2)):
        if -1e-9 <= t <= 1 + 1e-9:
            t = min(max(t, 0.0), 1.0)
            p = parabola_point(t)
            if eig_hermitian(p).eigenvalues[0] < -1e-9:
                continue
            d = hs_norm_sq(sigma - p)
            if best is None or d < best[0]:
                best = (d, t)
    if best is None:
        raise ArithmeticError(f"no admissible cubic root for a2={a2!r}")
    return float(best[1])


def ehs_pure_edge(a2: float, frames=None) -> BasepointResult:
    """Conjectured HS entanglement for pure states outside the central interval."""
    _check_a2(a2)
    if CENTRAL_LO < a2 < CENTRAL_HI:
        raise ValueError(f"a2={a2!r} lies inside the central interval; use ehs_pure_central")
    t = solve_edge_cubic(a2)
    U = _frame(frames)
    sigma = U @ projector(pure_vector(a2)) @ dagger(U)
    base = U @ parabola_point(t) @ dagger(U)
    return BasepointResult(
        hs_norm_sq(sigma - base), base, Regime.PURE_EDGE_CONJECTURE, sigma, parameter=t
    )


def ehs_pure(a2: float, frames=None) -> BasepointResult:
    _check_a2(a2)
    if in_central_interval(a2):
        return ehs_pure_central(a2, frames)
    return ehs_pure_edge(a2, frames)


def ehs_pure_schmidt(s: SchmidtForm) -> BasepointResult:
    return ehs_pure(s.a**2, (s.frame1, s.frame2))


def ehs_pure_vector(psi) -> BasepointResult:
    """Closed form for an arbitrary normalized two-qubit vector."""
    return ehs_pure_schmidt(schmidt_decompose(psi))


def mix_with_basepoint(sigma, basepoint, lam: float) -> np.ndarray:
    return lam * np.asarray(sigma) + (1 - lam) * np.asarray(basepoint)


def scaled_entanglement(sigma, basepoint, lam: float) -> float:
    """HS entanglement of lam*sigma + (1-lam)*basepoint, namely lam^2 E(sigma)."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {lam!r}")
    return lam**2 * hs_norm_sq(np.asarray(sigma) - np.asarray(basepoint))
