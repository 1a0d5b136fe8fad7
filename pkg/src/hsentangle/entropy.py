"""Relative entropy and pure-state entropy of entanglement, in bits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import eig_hermitian
from .states import validate_density

ZERO_PROB = 1e-12
SUPPORT_EIG_TOL = 1e-10
ORDER_TIE_TOL = 1e-12


@dataclass(frozen=True)
class RelEntropyValue:
    value: float
    infinite: bool = False
    support_violated: bool = False

    def __float__(self) -> float:
        return math.inf if self.infinite else self.value


def _plogp(p: np.ndarray) -> float:
    p = p[p > ZERO_PROB]
    return float(np.sum(p * np.log2(p)))


def relative_entropy(sigma, rho) -> RelEntropyValue:
    """S(sigma || rho) = tr(sigma log2 sigma) - tr(sigma log2 rho).

    Infinite when sigma has weight outside the support of rho.
    """
    sigma = validate_density(sigma)
    rho = validate_density(rho)
    s_eig = eig_hermitian(sigma).eigenvalues
    dec = eig_hermitian(rho)
    w, V = dec.eigenvalues, dec.eigenvectors
    # <v_k| sigma |v_k> for each eigenvector of rho
    weights = np.einsum("ik,ij,jk->k", V.conj(), sigma, V).real
    kernel = w <= SUPPORT_EIG_TOL
    if np.any(weights[kernel] > SUPPORT_EIG_TOL):
        return RelEntropyValue(math.inf, infinite=True, support_violated=True)
    cross = float(np.sum(weights[~kernel] * np.log2(w[~kernel])))
    return RelEntropyValue(_plogp(s_eig) - cross)


def binary_entropy(p: float) -> float:
    return 0.0 - _plogp(np.array([p, 1.0 - p]))


def evn_pure(a2: float) -> float:
    """Entropy of entanglement of a pure state with squared Schmidt coefficient a2."""
    if not 0.0 <= a2 <= 1.0:
        raise ValueError(f"a2 must lie in [0, 1], got {a2!r}")
    # symmetric in a2 <-> 1 - a2 by construction
    d = abs(a2 - 0.5)
    return binary_entropy(0.5 - d)


def prop3_check(e_vn: float, e_hs: float) -> float:
    """Slack e_vn - e_hs / 2 of the lower bound of relative-entropy entanglement by HS entanglement."""
    if e_vn < 0 or e_hs < 0:
        raise ValueError("entanglement values must be non-negative")
    return e_vn - e_hs / 2


def same_order_check(a2_1: float, a2_2: float) -> bool:
    """Whether both measures order two pure states the same way."""
    from .closed_form import ehs_pure

    def leq(x, y):
        return x <= y + ORDER_TIE_TOL

    v1, v2 = evn_pure(a2_1), evn_pure(a2_2)
    h1, h2 = ehs_pure(a2_1).entanglement, ehs_pure(a2_2).entanglement
    return leq(v1, v2) == leq(h1, h2)
