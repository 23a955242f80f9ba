from fractions import Fraction

import numpy as np
import pytest

from paraprob import engine, harness
from paraprob import quantum as qm
from paraprob.errors import FrameConflict, NotFound

THIRD = 1 / 3


def test_identify_maximally_mixed():
    frame, table = harness.identify(qm.SicProbVec(2, [0.5] * 4), [1, THIRD, THIRD, THIRD])
    assert frame.n == 4 and frame.shared_contradiction
    assert frame.c == (THIRD,) * 4
    assert table.b == (1, THIRD, THIRD, THIRD)


def test_identify_boundary_pure_state():
    sic = qm.builtin_sic(2)
    q = qm.sic_probs(sic.projectors[0], sic)
    frame, _ = harness.identify(q, q.q)
    assert frame.c[0] <= min(frame.p) + 1e-12


def test_identify_conflict():
    with pytest.raises(FrameConflict):
        harness.identify(qm.SicProbVec(2, [1, 1, 0, 0]), [0.5] * 4)


def test_identify_then_total_is_matched_rule():
    sic = qm.builtin_sic(3)
    rng = np.random.default_rng(4)
    for _ in range(200):
        w = rng.dirichlet(np.ones(9))
        rho = np.einsum("k,kij->ij", w, sic.projectors)
        q = qm.sic_probs(rho, sic)
        t = qm.effect_probs(qm.random_pure(3, rng), sic)
        frame, table = harness.identify(q, t)
        v = engine.total_probability(frame, table).value
        assert v == pytest.approx(engine.quantum_matched_total(3, q.q, t), abs=1e-14)


@pytest.mark.parametrize("d", range(2, 11))
def test_exact_contradiction_mass(d):
    assert harness.exact_contradiction_mass(d) == Fraction(1, d + 1)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("states", harness.STATE_FAMILIES)
def test_crosscheck_passes(d, states):
    report = harness.crosscheck(d, 200, seed=3, states=states)
    assert report.passed and not report.no_data
    assert report.contradiction_mass == pytest.approx(1 / (d + 1), abs=1e-12)
    assert report.max_abs_discrepancy_direct_vs_quantum_rule <= 1e-10
    assert report.max_abs_discrepancy_direct_vs_pbpt_rule <= 1e-10
    if states == "sic-hull":
        assert report.skipped == 0


def test_crosscheck_zero_trials():
    report = harness.crosscheck(2, 0, seed=0)
    assert report.passed and report.no_data
    assert report.max_abs_discrepancy_direct_vs_quantum_rule == 0.0


def test_crosscheck_deterministic():
    a = harness.crosscheck(3, 50, seed=8).to_json()
    b = harness.crosscheck(3, 50, seed=8).to_json()
    assert a == b


def test_crosscheck_with_searched_sic():
    from paraprob.fiducial import SearchConfig, optimize
    res = optimize(SearchConfig(d=4, seed=0))
    sic = qm.sic_from_fiducial(res.fiducial, 4, qm.SEARCHED_SIC_TOL)
    report = harness.crosscheck(4, 100, seed=1, sic=sic, states="sic-hull")
    assert report.passed and report.skipped == 0


def test_gap_qubit():
    w = harness.physicality_gap(2, seed=0)
    q = qm.SicProbVec(2, w.q)
    assert w.min_eigenvalue < -1e-6
    assert qm.physicality(qm.reconstruct(q, qm.builtin_sic(2))) == pytest.approx(w.min_eigenvalue)
    assert not w.admits_pbpt_frame


def test_gap_qutrit():
    assert harness.physicality_gap(3, seed=1).min_eigenvalue < -1e-6


def test_gap_not_found_with_tiny_budget():
    with pytest.raises(NotFound):
        harness.physicality_gap(2, seed=0, attempts=5, threshold=-10.0)


def test_physical_states_are_never_witnesses():
    sic = qm.builtin_sic(2)
    for seed in range(100):
        q = qm.sic_probs(qm.random_density(2, seed), sic)
        assert qm.physicality(qm.reconstruct(q, sic)) >= -1e-10
