import json
import math

import numpy as np
import pytest

from paraprob import quantum as qm
from paraprob.errors import BadIndex, DimensionMismatch, MassMismatch, NotDensity, NotHermitian, NotSic

THIRD = 1 / 3


@pytest.fixture(scope="module", params=[2, 3])
def sic(request):
    return qm.builtin_sic(request.param)


def test_born_self_and_mixed(sic):
    d = sic.d
    for pk in sic.projectors:
        assert qm.born(pk, pk) == pytest.approx(1.0, abs=1e-14)
        assert qm.born(np.eye(d) / d, pk) == pytest.approx(1 / d, abs=1e-15)


def test_born_tetrahedron_overlap():
    pi = qm.builtin_sic(2).projectors
    assert qm.born(pi[0], pi[1]) == pytest.approx(THIRD, abs=1e-15)


def test_born_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        qm.born(np.eye(2) / 2, np.eye(3) / 3)


def test_born_symmetric():
    rng = np.random.default_rng(3)
    for d in (2, 3, 5):
        for _ in range(50):
            rho = qm.random_density(d, int(rng.integers(1 << 30)))
            sigma = qm.random_pure(d, rng)
            assert abs(qm.born(rho, sigma) - qm.born(sigma, rho)) <= 1e-14


def test_gram_and_resolution(sic):
    d = sic.d
    assert sic.residual <= 1e-12
    assert np.max(np.abs(sic.projectors.sum(axis=0) - d * np.eye(d))) <= 1e-12
    assert sic.projectors.shape == (d * d, d, d)


def test_sic_probs_examples():
    sic = qm.builtin_sic(2)
    q = qm.sic_probs(np.eye(2) / 2, sic)
    assert q.q == pytest.approx([0.5] * 4, abs=1e-15)
    q0 = qm.sic_probs(sic.projectors[0], sic)
    assert q0.q == pytest.approx([1, THIRD, THIRD, THIRD], abs=1e-15)


def test_sic_probs_sum(sic):
    for seed in range(200):
        q = qm.sic_probs(qm.random_density(sic.d, seed), sic)
        assert math.fsum(q.q) == pytest.approx(sic.d, abs=1e-10)


def test_reconstruct_uniform(sic):
    d = sic.d
    m = qm.reconstruct(qm.SicProbVec(d, [1 / d] * (d * d)), sic)
    assert np.max(np.abs(m - np.eye(d) / d)) <= 1e-14


def test_reconstruct_roundtrip(sic):
    for seed in range(300):
        rho = qm.random_density(sic.d, seed)
        back = qm.reconstruct(qm.sic_probs(rho, sic), sic)
        assert np.max(np.abs(back - rho.m)) <= 1e-10


def test_reconstruct_unphysical_qubit():
    sic = qm.builtin_sic(2)
    m = qm.reconstruct(qm.SicProbVec(2, [1, 1, 0, 0]), sic)
    # Bloch form I/2 + (3/4)(n_0 + n_1).sigma with n_0.n_1 = 2 Tr(P0 P1) - 1 = -1/3,
    # so the low eigenvalue is 1/2 - (3/4) sqrt(4/3)
    expected = 0.5 - 0.75 * math.sqrt(4 / 3)
    assert qm.physicality(m) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx((1 - math.sqrt(3)) / 2, abs=1e-15)
    with pytest.raises(NotDensity):
        qm.DensityOp(m)


def test_reconstruct_mass_mismatch():
    with pytest.raises(MassMismatch):
        qm.SicProbVec(2, [0.5, 0.5, 0.5, 0.4])


def test_identifiable_vectors_reconstruct_to_states(sic):
    # q_k >= 1/(d+1) gives (d+1)/d times a nonnegative mixture of projectors
    d = sic.d
    rng = np.random.default_rng(5)
    for _ in range(300):
        q = 1 / (d + 1) + (d / (d + 1)) * rng.dirichlet(np.ones(d * d))
        q[-1] += d - math.fsum(q)
        assert qm.physicality(qm.reconstruct(qm.SicProbVec(d, q), sic)) >= -1e-12


def test_quantum_total_examples():
    sic = qm.builtin_sic(2)
    t = [1, THIRD, THIRD, THIRD]
    assert qm.quantum_total(qm.SicProbVec(2, t), t) == pytest.approx(1.0, abs=1e-15)
    rng = np.random.default_rng(0)
    for _ in range(20):
        sigma = qm.random_pure(2, rng)
        tt = qm.effect_probs(sigma, sic)
        assert qm.quantum_total(qm.SicProbVec(2, [0.5] * 4), tt) == pytest.approx(0.5, abs=1e-14)


def test_quantum_total_matches_trace(sic):
    rng = np.random.default_rng(9)
    for _ in range(300):
        rho = qm.random_density(sic.d, int(rng.integers(1 << 30)))
        sigma = qm.random_pure(sic.d, rng)
        got = qm.quantum_total(qm.sic_probs(rho, sic), qm.effect_probs(sigma, sic))
        assert got == pytest.approx(np.trace(sigma.m @ rho.m).real, abs=1e-10)


def test_quantum_total_mixed_effect(sic):
    # Tr(Sigma rho) with a density operator as the effect
    rho = qm.random_density(sic.d, 1)
    sigma = qm.random_density(sic.d, 2)
    got = qm.quantum_total(qm.sic_probs(rho, sic), qm.effect_probs(sigma, sic))
    assert got == pytest.approx(qm.born(rho, sigma), abs=1e-12)


def test_quantum_total_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        qm.quantum_total(qm.SicProbVec(2, [0.5] * 4), [0.1] * 9)


# -- eigensolver / physicality --------------------------------------------------------

def test_eigh_residuals_random_hermitian():
    rng = np.random.default_rng(21)
    for _ in range(200):
        d = int(rng.integers(1, 17))
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        h = (g + g.conj().T) / 2
        w, v = qm.eigh_checked(h)
        assert np.all(np.isreal(w))
        assert np.max(np.linalg.norm(h @ v - v * w, axis=0)) <= 1e-10
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)) <= 1e-10


def test_physicality_examples(sic):
    d = sic.d
    assert qm.physicality(np.eye(d) / d) == pytest.approx(1 / d, abs=1e-15)
    for seed in range(50):
        assert qm.physicality(qm.random_density(d, seed).m) >= -1e-12


def test_physicality_not_hermitian():
    with pytest.raises(NotHermitian):
        qm.physicality(np.array([[0, 1], [0, 0]]))


# -- Weyl-Heisenberg ------------------------------------------------------------------

def test_displacement_identity_and_z():
    assert np.array_equal(qm.wh_displacement(3, 0, 0), np.eye(3))
    assert np.allclose(qm.wh_displacement(2, 0, 1), np.diag([1, -1]), atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 8])
def test_displacement_unitary(d):
    for j in range(d):
        for k in range(d):
            m = qm.wh_displacement(d, j, k)
            assert np.max(np.abs(m @ m.conj().T - np.eye(d))) <= 1e-12


@pytest.mark.parametrize("d", [2, 3, 5])
def test_weyl_commutation(d):
    x = qm.wh_displacement(d, 1, 0)
    z = qm.wh_displacement(d, 0, 1)
    omega = np.exp(2j * np.pi / d)
    assert np.allclose(z @ x, omega * x @ z, atol=1e-14)
    assert np.allclose(x @ np.eye(d)[:, 0], np.eye(d)[:, 1 % d])


def test_displacement_bad_index():
    with pytest.raises(BadIndex):
        qm.wh_displacement(2, 2, 0)


def test_random_vector_is_not_fiducial():
    rng = np.random.default_rng(0)
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    with pytest.raises(NotSic):
        qm.sic_from_fiducial(v / np.linalg.norm(v), 3)


def test_fiducial_phase_fixed(sic):
    first = sic.fiducial[np.flatnonzero(np.abs(sic.fiducial) > 1e-12)[0]]
    assert first.imag == 0 and first.real > 0


# -- random states ----------------------------------------------------------------------

def test_random_density_deterministic():
    a, b = qm.random_density(3, 42), qm.random_density(3, 42)
    assert np.array_equal(a.m, b.m)
    assert abs(np.trace(a.m).real - 1) <= 1e-14
    assert not np.array_equal(a.m, qm.random_density(3, 43).m)


# -- JSON -------------------------------------------------------------------------------

def test_matrix_json_roundtrip():
    m = qm.random_density(3, 7).m
    back = qm.matrix_from_json(json.loads(json.dumps(qm.matrix_to_json(m))))
    assert np.array_equal(back, m)


def test_matrix_json_bad_shape():
    with pytest.raises(DimensionMismatch):
        qm.matrix_from_json({"d": 3, "re_im": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]})


def test_sic_json_revalidated(sic):
    doc = json.loads(json.dumps(qm.sic_to_json(sic)))
    back = qm.sic_from_json(doc)
    assert np.max(np.abs(back.projectors - sic.projectors)) <= 1e-15
    doc["fiducial"][0] = [0.9, 0.1]
    with pytest.raises(NotSic):
        qm.sic_from_json(doc)
