import itertools

import numpy as np
import pytest
from scipy.optimize import brentq

from hsentangle.linalg import eig_hermitian, tensor
from hsentangle.states import (
    I2,
    I4,
    InvalidStateError,
    LocalChannel,
    SchmidtForm,
    apply_local_channel,
    bell_projector,
    bell_vector,
    depolarizing_kraus,
    is_ppt,
    ket,
    local_unitary,
    min_pt_eigenvalue,
    partial_trace,
    partial_transpose,
    phi_mix,
    projector,
    pure_from_schmidt,
    random_density,
    random_pure_vector,
    random_unitary,
    schmidt_decompose,
    validate_density,
    werner,
)

from conftest import np_partial_transpose


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_bell_projectors_are_states(i):
    P = validate_density(bell_projector(i))
    assert np.allclose(P @ P, P)


def test_bell_projector_entries_and_orthogonality():
    assert bell_projector(1)[0, 0] == pytest.approx(0.5)
    for i, j in itertools.product(range(1, 5), repeat=2):
        assert np.trace(bell_projector(i) @ bell_projector(j)).real == pytest.approx(float(i == j), abs=1e-15)
    assert np.allclose(partial_trace(bell_projector(1), 2), I2 / 2)


def test_bell_index_validation():
    with pytest.raises(ValueError):
        bell_projector(0)
    with pytest.raises(ValueError):
        bell_vector(5)


def test_phi_mix():
    P = phi_mix(1, 2)
    assert np.allclose(eig_hermitian(P).eigenvalues, [0, 0, 0.5, 0.5], atol=1e-14)
    assert np.trace(P).real == pytest.approx(1)
    with pytest.raises(ValueError):
        phi_mix(3, 3)


@pytest.mark.parametrize("i,j", [p for p in itertools.combinations(range(1, 5), 2)])
def test_phi_mix_octahedron_is_ppt(i, j):
    assert is_ppt(phi_mix(i, j))
    assert is_ppt(phi_mix(j, i))


def test_werner_examples():
    assert np.allclose(werner(1, 0), I4 / 4)
    assert np.allclose(werner(1, 1), bell_projector(1))
    assert np.allclose(eig_hermitian(werner(1, 1 / 3)).eigenvalues, [1 / 6] * 3 + [0.5], atol=1e-14)
    with pytest.raises(ValueError):
        werner(1, 1.5)
    with pytest.raises(ValueError):
        werner(1, -0.1)


def test_werner_ppt_threshold():
    # oracle: LAPACK spectrum of the partial transpose, bracketed root
    def lo(eps):
        return np.linalg.eigvalsh(np_partial_transpose(werner(1, eps)))[0]

    root = brentq(lo, 0.05, 0.95, xtol=1e-14)
    assert root == pytest.approx(1 / 3, abs=1e-12)
    for eps in np.linspace(0, 1, 41):
        assert min_pt_eigenvalue(werner(1, eps)) == pytest.approx((1 - 3 * eps) / 4, abs=1e-12)
    assert is_ppt(werner(1, 1 / 3))
    assert not is_ppt(werner(1, 1 / 3 + 0.01))


def test_pure_from_schmidt_examples():
    assert np.allclose(pure_from_schmidt(SchmidtForm(1.0, 0.0)), np.diag([1, 0, 0, 0]))
    r = 1 / np.sqrt(2)
    assert np.allclose(pure_from_schmidt(SchmidtForm(r, r)), bell_projector(1))
    s = SchmidtForm.from_a2(0.3)
    w = eig_hermitian(partial_trace(pure_from_schmidt(s), 1)).eigenvalues
    assert np.allclose(w, [0.3, 0.7], atol=1e-12)


def test_schmidt_form_validation():
    with pytest.raises(ValueError):
        SchmidtForm(0.6, 0.6)
    with pytest.raises(ValueError):
        SchmidtForm(0.6, 0.8)  # wrong ordering
    with pytest.raises(ValueError):
        SchmidtForm(1.0, 0.0, frame1=np.array([[1, 1], [0, 1]]))


def test_schmidt_decompose_examples():
    s = schmidt_decompose(bell_vector(1))
    assert s.a == pytest.approx(1 / np.sqrt(2)) and s.b == pytest.approx(1 / np.sqrt(2))
    s = schmidt_decompose(ket("01"))
    assert s.a == pytest.approx(1) and s.b == pytest.approx(0, abs=1e-12)
    s = schmidt_decompose(0.6 * ket("00") + 0.8 * ket("11"))
    assert s.a == pytest.approx(0.8) and s.b == pytest.approx(0.6)
    with pytest.raises(ValueError):
        schmidt_decompose(2 * ket("00"))


def test_schmidt_roundtrip(rng):
    for _ in range(1000):
        psi = random_pure_vector(rng)
        s = schmidt_decompose(psi)
        assert np.max(np.abs(pure_from_schmidt(s) - projector(psi))) < 1e-9
        U1, U2 = random_unitary(rng), random_unitary(rng)
        a2 = rng.uniform()
        t = schmidt_decompose(SchmidtForm.from_a2(a2, U1, U2).vector())
        assert t.a == pytest.approx(np.sqrt(max(a2, 1 - a2)), abs=1e-9)
        assert t.b == pytest.approx(np.sqrt(min(a2, 1 - a2)), abs=1e-9)


def test_partial_transpose_examples(rng):
    r1, r2 = random_density(rng)[:2, :2], random_density(rng)[:2, :2]
    r1, r2 = r1 / np.trace(r1), r2 / np.trace(r2)
    assert np.allclose(partial_transpose(tensor(r1, r2)), tensor(r1, r2.T))
    assert eig_hermitian(partial_transpose(bell_projector(1))).eigenvalues[0] == pytest.approx(-0.5)
    rho = random_density(rng)
    assert np.array_equal(partial_transpose(partial_transpose(rho)), rho)
    assert np.allclose(partial_transpose(rho), np_partial_transpose(rho), atol=0)


def test_partial_transpose_trace_hermitian(rng):
    for _ in range(100):
        rho = random_density(rng)
        T = partial_transpose(rho)
        assert abs(np.trace(T) - np.trace(rho)) <= 1e-14
        assert np.max(np.abs(T - T.conj().T)) <= 1e-14


def test_partial_trace_examples(rng):
    assert np.allclose(partial_trace(bell_projector(1), 1), I2 / 2)
    r1 = random_density(rng, 1)[:2, :2]
    r1 = r1 / np.trace(r1)
    r2 = np.diag([0.3, 0.7])
    assert np.allclose(partial_trace(tensor(r1, r2), 2), r1)
    assert np.allclose(partial_trace(tensor(r1, r2), 1), r2)
    with pytest.raises(ValueError):
        partial_trace(I4 / 4, 3)


def test_is_ppt_examples():
    assert not is_ppt(bell_projector(1))
    assert is_ppt(phi_mix(1, 2))
    assert is_ppt(I4 / 4)


def test_ppt_invariant_under_local_unitaries(rng):
    for _ in range(100):
        rho = random_density(rng, rank=int(rng.integers(1, 5)))
        U1, U2 = random_unitary(rng), random_unitary(rng)
        U = tensor(U1, U2)
        rho2 = U @ rho @ U.conj().T
        assert is_ppt(rho2) == is_ppt(rho)
        w1 = eig_hermitian(partial_transpose(rho)).eigenvalues
        w2 = eig_hermitian(partial_transpose(rho2)).eigenvalues
        assert np.allclose(w1, w2, atol=1e-9)


def test_validate_density_rejects():
    with pytest.raises(InvalidStateError):
        validate_density(np.diag([1.0, 1, 0, 0]))
    with pytest.raises(InvalidStateError):
        validate_density(np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(InvalidStateError):
        validate_density(np.array([[0.5, 1], [0, 0.5]]))
    with pytest.raises(InvalidStateError):
        validate_density(np.eye(3) / 3)


def test_local_channels(rng):
    rho = random_density(rng)
    ident = LocalChannel([I2], [I2])
    assert np.allclose(apply_local_channel(rho, ident), rho)
    U1, U2 = random_unitary(rng), random_unitary(rng)
    out = apply_local_channel(rho, local_unitary(U1, U2))
    assert np.allclose(eig_hermitian(out).eigenvalues, eig_hermitian(rho).eigenvalues, atol=1e-12)
    full = LocalChannel(depolarizing_kraus(1.0), depolarizing_kraus(1.0))
    assert np.allclose(apply_local_channel(rho, full), I4 / 4)
    with pytest.raises(ValueError):
        LocalChannel([0.5 * I2], [I2])


def test_random_states_are_valid(rng):
    for rank in (1, 2, 3, 4):
        validate_density(random_density(rng, rank))
