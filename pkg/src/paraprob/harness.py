"""Cross-checks between PBPT predictions and SIC quantum predictions."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .engine import (
    BeliefFrame,
    ConditionalTable,
    quantum_matched_total,
    shared_contradiction_mass,
    total_probability,
)
from .errors import FrameConflict, NotFound
from .quantum import (
    DensityOp,
    SicProbVec,
    SicSet,
    born,
    builtin_sic,
    effect_probs,
    physicality,
    quantum_total,
    random_density,
    random_pure,
    reconstruct,
    sic_probs,
)

DEFAULT_TOL = 1e-10


def identify(q: SicProbVec, t) -> tuple[BeliefFrame, ConditionalTable]:
    """Read SIC probabilities as hypothesis masses and ``Tr(Sigma P_k)`` as conditionals.

    The frame has ``d*d`` hypotheses sharing one contradictoriness of mass
    ``1/(d+1)``; states with some ``q_k`` below that mass cannot be encoded
    and raise :class:`FrameConflict`.
    """
    d = q.d
    c = shared_contradiction_mass(d * d, float(d))
    if c > float(np.min(q.q)) + 1e-12:
        raise FrameConflict(f"contradiction mass {c:.6g} exceeds min q_k={float(np.min(q.q)):.6g}")
    frame = BeliefFrame.shared(tuple(q.q), float(d))
    return frame, ConditionalTable(tuple(np.asarray(t, dtype=float)))


def exact_contradiction_mass(d: int) -> Fraction:
    return shared_contradiction_mass(d * d, Fraction(d))


@dataclass
class CrossCheckReport:
    d: int
    trials: int
    seed: int
    states: str
    max_abs_discrepancy_direct_vs_quantum_rule: float
    max_abs_discrepancy_direct_vs_pbpt_rule: float
    max_abs_discrepancy_pbpt_vs_matched_rule: float
    contradiction_mass: float
    skipped: int
    tolerance: float
    passed: bool
    no_data: bool

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["pass"] = doc.pop("passed")
        return doc


STATE_FAMILIES = ("hs", "sic-hull")


def _trial_state(d: int, sic: SicSet, seed: int, i: int, family: str):
    if family == "hs":
        return random_density(d, seed=int(np.random.SeedSequence([seed, i, 0]).generate_state(1)[0]))
    weights = np.random.default_rng([seed, i, 0]).dirichlet(np.ones(d * d))
    m = np.einsum("k,kij->ij", weights, sic.projectors)
    return DensityOp((m + m.conj().T) / 2 / np.trace(m).real)


def crosscheck(d: int, trials: int, seed: int, tol: float = DEFAULT_TOL,
               sic: SicSet | None = None, states: str = "hs") -> CrossCheckReport:
    """Compare ``Tr(Sigma rho)`` with the quantum rule and the identified PBPT rule.

    Trial ``i`` draws a state and a Haar random pure effect from seeds derived
    from ``(seed, i)``.  ``states="hs"`` samples Hilbert-Schmidt random states;
    ``"sic-hull"`` samples random mixtures of the SIC projectors, which are
    exactly the states the identification can encode.  Trials whose state has
    a SIC probability below the contradiction mass are skipped and counted.
    """
    if states not in STATE_FAMILIES:
        raise ValueError(f"states must be one of {STATE_FAMILIES}, got {states!r}")
    sic = sic if sic is not None else builtin_sic(d)
    c = shared_contradiction_mass(d * d, float(d))
    worst_q = worst_p = worst_m = 0.0
    skipped = 0
    for i in range(trials):
        rho = _trial_state(d, sic, seed, i, states)
        sigma = random_pure(d, np.random.default_rng([seed, i, 1]))
        direct = born(rho, sigma)
        q = sic_probs(rho, sic)
        t = effect_probs(sigma, sic)
        worst_q = max(worst_q, abs(direct - quantum_total(q, t)))
        try:
            frame, table = identify(q, t)
        except FrameConflict:
            skipped += 1
            continue
        v = total_probability(frame, table).value
        worst_p = max(worst_p, abs(direct - v))
        worst_m = max(worst_m, abs(v - quantum_matched_total(d, q.q, t)))
    no_data = trials == 0
    passed = worst_q <= tol and worst_p <= tol
    return CrossCheckReport(d, trials, seed, states, worst_q, worst_p, worst_m, c, skipped, tol,
                            passed, no_data)


@dataclass
class GapWitness:
    d: int
    q: list
    min_eigenvalue: float
    attempts_used: int
    admits_pbpt_frame: bool

    def to_json(self) -> dict:
        return asdict(self)


def physicality_gap(d: int, seed: int, attempts: int = 10_000, threshold: float = -1e-6,
                    sic: SicSet | None = None) -> GapWitness:
    """Search for SIC probability vectors whose reconstructed operator is not a state.

    Candidates are uniform on the simplex ``sum(q) = d`` restricted to
    ``q_k <= 1``.  A witness never admits a PBPT frame: when every
    ``q_k >= 1/(d+1)`` the reconstruction is ``(d+1)/d`` times a nonnegative
    mixture of the projectors and hence positive.
    """
    sic = sic if sic is not None else builtin_sic(d)
    n = d * d
    rng = np.random.default_rng(seed)
    for attempt in range(1, attempts + 1):
        q = d * rng.dirichlet(np.ones(n))
        if np.any(q > 1.0):
            continue
        # put the rounding error of the sum back into the largest entry
        q[np.argmax(q)] += d - math.fsum(q)
        vec = SicProbVec(d, q)
        lam = physicality(reconstruct(vec, sic))
        if lam < threshold:
            admits = float(np.min(q)) >= 1.0 / (d + 1) - 1e-12
            return GapWitness(d, [float(x) for x in q], lam, attempt, admits)
    raise NotFound(f"no unphysical SIC vector found in {attempts} attempts")
