"""Numerical Hilbert-Schmidt entanglement by conditional gradients over product states.

The separable set is the convex hull of product projectors, so every linear
subproblem is solved over pairs of single-qubit vectors.  The bilinear
subproblem is non-convex; it is attacked by alternating minimal-eigenvector
updates from several seeded random starts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from scipy.optimize import nnls

from .linalg import hs_inner, hs_norm_sq
from .states import is_ppt, validate_density

CERTIFICATE_TOL = 1e-7
MERGE_OVERLAP = 1 - 1e-10
LMO_IMPROVEMENT_TOL = 1e-12
_SIMPLEX_PENALTY = 1e4
_POLISH_CANDIDATES = 2


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 5000
    tol: float = 1e-6
    lmo_restarts: int = 8
    lmo_inner_iters: int = 50
    seed: int = 0

    def __post_init__(self):
        if min(self.max_iters, self.lmo_restarts, self.lmo_inner_iters) <= 0:
            raise ValueError("iteration counts must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class ProductProjector:
    """P_chi (x) P_xi for unit vectors chi, xi in C^2."""

    chi: np.ndarray
    xi: np.ndarray

    def __post_init__(self):
        for v in (self.chi, self.xi):
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError("product projector factors must be unit vectors")

    def vector(self) -> np.ndarray:
        return np.kron(self.chi, self.xi)

    def matrix(self) -> np.ndarray:
        v = self.vector()
        return np.outer(v, v.conj())

    def overlap(self, other: "ProductProjector") -> float:
        return abs(np.vdot(self.chi, other.chi)) ** 2 * abs(np.vdot(self.xi, other.xi)) ** 2


@dataclass
class SeparableApprox:
    """Explicit convex combination of product projectors."""

    weights: list[float] = field(default_factory=list)
    atoms: list[ProductProjector] = field(default_factory=list)

    def assemble(self) -> np.ndarray:
        if not self.atoms:
            raise ValueError("empty separable decomposition")
        V = np.array([a.vector() for a in self.atoms])
        return np.einsum("n,ni,nj->ij", np.asarray(self.weights), V, V.conj())


@dataclass
class EntanglementResult:
    value: float
    basepoint: SeparableApprox
    gap: float
    iterations: int
    converged: bool
    history: list[float] = field(default_factory=list, repr=False)

    @property
    def basepoint_matrix(self) -> np.ndarray:
        return self.basepoint.assemble()


@dataclass(frozen=True)
class CertificateReport:
    min_derivative: float
    witness: ProductProjector
    passed: bool


_PAULI4 = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def _unit_vectors(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def _lmo_rng(seed: int, call: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, call])))


def bloch_vector(v: np.ndarray) -> np.ndarray:
    """<v|sigma_k|v> for k = x, y, z; works on batches of shape (..., 2)."""
    return np.einsum("...i,kij,...j->...k", v.conj(), _PAULI4[1:], v).real


def ket_from_bloch(n: np.ndarray) -> np.ndarray:
    """Unit vector whose projector is (I + n.sigma)/2."""
    x, y, z = n
    if z > -0.5:
        v = np.array([1 + z, x + 1j * y])
    else:
        v = np.array([x - 1j * y, 1 - z])
    return v / np.linalg.norm(v)


def pauli_coefficients(M) -> np.ndarray:
    """Real 4x4 array T with T[mu, nu] = tr(M sigma_mu (x) sigma_nu)."""
    T4 = np.asarray(M, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("ijkl,mki,nlj->mn", T4, _PAULI4, _PAULI4).real


def _reduced(n: np.ndarray, T: np.ndarray) -> float:
    """Objective (times 4) after the optimal first-factor choice for Bloch vector n."""
    u = T[1:, 0] + T[1:, 1:] @ n
    return T[0, 0] + T[0, 1:] @ n - sqrt(u @ u)


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.array(
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    )


def _tangent_basis(n: np.ndarray) -> np.ndarray:
    a = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = _cross(n, a)
    e1 /= sqrt(e1 @ e1)
    return np.column_stack([e1, _cross(n, e1)])


def _newton_polish(n: np.ndarray, T: np.ndarray, steps: int = 40) -> np.ndarray:
    """Riemannian Newton on the sphere for the reduced second-factor objective."""
    s, t, C = T[0, 1:], T[1:, 0], T[1:, 1:]
    val = _reduced(n, T)
    for _ in range(steps):
        u = t + C @ n
        nu = sqrt(u @ u)
        if nu < 1e-14:
            break
        uh = u / nu
        Cu = C.T @ uh
        g = s - Cu
        ng = n @ g
        g_r = g - ng * n
        if sqrt(g_r @ g_r) < 1e-11:
            break
        E = _tangent_basis(n)
        CE = C @ E
        # tangent Hessian of s.n - |t + C n| with the sphere curvature term
        Hr = -(CE.T @ CE - np.outer(CE.T @ uh, CE.T @ uh)) / nu - ng * np.eye(2)
        gr = E.T @ g_r
        det = Hr[0, 0] * Hr[1, 1] - Hr[0, 1] * Hr[1, 0]
        if Hr[0, 0] > 0 and det > 1e-24:
            c0 = -(Hr[1, 1] * gr[0] - Hr[0, 1] * gr[1]) / det
            c1 = -(Hr[0, 0] * gr[1] - Hr[1, 0] * gr[0]) / det
            step = E[:, 0] * c0 + E[:, 1] * c1
        else:
            step = -g_r
        improved = False
        for _ in range(30):
            cand = n + step
            cand = cand / sqrt(cand @ cand)
            cval = _reduced(cand, T)
            if cval <= val:
                improved = cval < val - 1e-16
                n, val = cand, cval
                break
            step = step / 2
        if not improved:
            break
    return n


def lmo_product_projector(
    M, cfg: SolverConfig = SolverConfig(), call: int = 0, extra_starts=None
) -> tuple[ProductProjector, float]:
    """Approximately minimize tr(M P_chi (x) P_xi) over product projectors.

    Works with Bloch vectors: tr(M P_chi (x) P_xi) = T[mu, nu] m_mu n_nu / 4
    with m_0 = n_0 = 1.  For fixed xi the optimal chi is the lowest
    eigenvector of the contracted 2x2 matrix, i.e. the Bloch vector opposite
    to its Pauli components, and symmetrically for xi.  Each seeded start
    alternates these updates until the objective stalls; the best few
    candidates are then refined by Newton's method on the sphere.
    ``call`` selects an independent random stream so that successive calls
    inside one solve do not reuse starting points.  ``extra_starts`` are
    additional xi vectors tried alongside the random ones.
    """
    T = pauli_coefficients(M)
    tau, t, s, C = T[0, 0], T[1:, 0], T[0, 1:], T[1:, 1:]

    xi = _unit_vectors(_lmo_rng(cfg.seed, call), cfg.lmo_restarts)
    if extra_starts is not None and len(extra_starts):
        xi = np.vstack([xi, np.asarray(extra_starts, dtype=complex).reshape(-1, 2)])
    n = bloch_vector(xi)

    val = np.full(len(n), np.inf)
    for _ in range(cfg.lmo_inner_iters):
        u = t + n @ C.T
        m = -u / np.maximum(np.linalg.norm(u, axis=1, keepdims=True), 1e-300)
        w = s + m @ C
        n = -w / np.maximum(np.linalg.norm(w, axis=1, keepdims=True), 1e-300)
        new = tau + m @ t - np.linalg.norm(w, axis=1)
        done = np.all(val - new < LMO_IMPROVEMENT_TOL)
        val = new
        if done:
            break

    best_n, best_val = None, np.inf
    for r in np.argsort(val, kind="stable")[:_POLISH_CANDIDATES]:
        cand = _newton_polish(n[r], T)
        cval = _reduced(cand, T)
        if cval < best_val:
            best_n, best_val = cand, cval

    u = t + C @ best_n
    nu = np.linalg.norm(u)
    best_m = -u / nu if nu > 1e-300 else np.array([0.0, 0.0, 1.0])
    atom = ProductProjector(ket_from_bloch(best_m), ket_from_bloch(best_n))
    v = atom.vector()
    return atom, float(np.vdot(v, np.asarray(M) @ v).real)


def _hvec(X: np.ndarray) -> np.ndarray:
    """Real coordinates of a Hermitian matrix, isometric for the HS inner product."""
    X = np.asarray(X)
    return np.concatenate([X.real.ravel(), X.imag.ravel()])


def _refit_weights(vecs: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Least-squares weights on the simplex for the given atom vectors.

    The sum-to-one constraint enters as a heavily weighted extra row of a
    non-negative least-squares problem; the result is renormalized.
    """
    A = np.array([_hvec(np.outer(v, v.conj())) for v in vecs]).T
    A = np.vstack([A, _SIMPLEX_PENALTY * np.ones(A.shape[1])])
    b = np.concatenate([_hvec(target), [_SIMPLEX_PENALTY]])
    w, _ = nnls(A, b, maxiter=50 * A.shape[1])
    total = w.sum()
    return w / total if total > 0 else w


def nearest_separable(sigma, cfg: SolverConfig = SolverConfig()) -> EntanglementResult:
    """Minimize ||rho - sigma||_HS^2 over separable rho by conditional gradients.

    Each iteration takes the oracle atom with an exact line search, then
    re-fits the weights of all active atoms (fully corrective step), keeping
    the re-fit only when it does not increase the objective.  The reported
    gap is the conditional-gradient duality gap 2 tr((rho - sigma)(rho - omega)).
    """
    sigma = validate_density(sigma)
    if sigma.shape != (4, 4):
        raise ValueError("nearest_separable expects a two-qubit state")

    basis = np.eye(2, dtype=complex)
    atoms = [ProductProjector(basis[i], basis[j]) for i in range(2) for j in range(2)]
    weights = np.full(4, 0.25)
    vecs = np.array([a.vector() for a in atoms])
    rho = np.eye(4, dtype=complex) / 4

    f = hs_norm_sq(rho - sigma)
    history = [f]
    gap = np.inf
    converged = False
    iterations = 0
    prev_xi = None
    for k in range(1, cfg.max_iters + 1):
        R = rho - sigma
        atom, _ = lmo_product_projector(R, cfg, call=k, extra_starts=prev_xi)
        prev_xi = atom.xi[None, :]
        S = atom.matrix()
        gap = 2 * hs_inner(R, rho - S).real
        if gap <= cfg.tol:
            converged = True
            break
        iterations = k

        D = S - rho
        gamma = min(max(-hs_inner(R, D).real / hs_norm_sq(D), 0.0), 1.0)
        weights = weights * (1 - gamma)
        overlaps = np.abs(vecs.conj() @ atom.vector()) ** 2
        j = int(np.argmax(overlaps))
        if overlaps[j] > MERGE_OVERLAP:
            weights[j] += gamma
        else:
            atoms.append(atom)
            weights = np.append(weights, gamma)
            vecs = np.vstack([vecs, atom.vector()])
        rho = rho + gamma * D
        f_step = hs_norm_sq(rho - sigma)

        w_fit = _refit_weights(vecs, sigma)
        rho_fit = np.einsum("n,ni,nj->ij", w_fit, vecs, vecs.conj())
        f_fit = hs_norm_sq(rho_fit - sigma)
        if f_fit <= f_step:
            rho, f, weights = rho_fit, f_fit, w_fit
        else:
            f = f_step
        keep = weights > 0
        if not keep.all():
            atoms = [a for a, kept in zip(atoms, keep) if kept]
            weights, vecs = weights[keep], vecs[keep]
        history.append(f)

    approx = SeparableApprox(weights=[float(w) for w in weights], atoms=list(atoms))
    rho = approx.assemble()
    return EntanglementResult(
        value=hs_norm_sq(rho - sigma),
        basepoint=approx,
        gap=float(gap),
        iterations=iterations,
        converged=converged,
        history=history,
    )


def certify_basepoint(
    sigma, candidate, cfg: SolverConfig = SolverConfig(), tol: float = CERTIFICATE_TOL
) -> CertificateReport:
    """Minimum over product projectors of the directional derivative at ``candidate``.

    The derivative toward omega is 2 tr((sigma - c)(c - omega)); it is affine in
    omega, so checking product projectors is enough.
    """
    sigma = validate_density(sigma)
    candidate = validate_density(candidate)
    if not is_ppt(candidate):
        raise ValueError("candidate basepoint is not separable")
    diff = sigma - candidate
    const = 2 * hs_inner(diff, candidate).real
    # minimize const - 2 tr(diff omega) == const + tr(-2 diff omega)
    atom, lin = lmo_product_projector(-2 * diff, cfg)
    d = const + lin
    return CertificateReport(min_derivative=float(d), witness=atom, passed=d >= -tol)
