import random

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from paraprob import logic
from paraprob.logic import And, Atom, Not, Or

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

A, B, C = Atom("A"), Atom("B"), Atom("C")

_DERIVED = [logic.noncontra, logic.contra, logic.strong_neg, logic.nc_part]


def random_expr(rng: random.Random, depth: int, labels="ABC"):
    """Random expression of depth <= ``depth`` biased toward the derived shapes."""
    if depth <= 1 or rng.random() < 0.15:
        return Atom(rng.choice(labels))
    k = rng.randrange(9)
    if k == 0:
        return Not(random_expr(rng, depth - 1, labels))
    if k in (1, 2):
        node = And if k == 1 else Or
        return node(random_expr(rng, depth - 1, labels), random_expr(rng, depth - 1, labels))
    if k in (3, 4, 5, 6):
        # derived forms add up to three levels
        return _DERIVED[k - 3](random_expr(rng, max(1, depth - 3), labels))
    # pair a subterm with one of its derived forms, so R1/R2/R4 redexes occur
    a = random_expr(rng, max(1, depth - 4), labels)
    left = rng.choice([logic.contra, logic.nc_part, lambda x: x])(a)
    right = rng.choice([logic.contra, logic.nc_part, lambda x: x, Not])(a)
    if rng.random() < 0.5:
        left, right = right, left
    return And(left, right)


def random_normalize(e, rng: random.Random):
    """Rewrite to a normal form picking a random redex each step."""
    steps = 0
    while True:
        options = list(logic.redexes(e))
        if not options:
            return e, steps
        e = rng.choice(options)[1]
        steps += 1


atoms = st.sampled_from([A, B, C])


def _extend(children):
    return st.one_of(
        children.map(Not),
        st.tuples(children, children).map(lambda t: And(*t)),
        st.tuples(children, children).map(lambda t: Or(*t)),
        children.map(logic.contra),
        children.map(logic.nc_part),
        children.map(logic.noncontra),
    )


exprs = st.recursive(atoms, _extend, max_leaves=12)


# -- engine helpers -------------------------------------------------------------

def random_frame_arrays(rng: np.random.Generator, n_max: int = 16):
    """Valid general (p, c) with a comfortably positive non-contradictory mass."""
    n = int(rng.integers(1, n_max + 1))
    p = rng.uniform(0.0, 1.0, n)
    c = p * rng.uniform(0.0, 1.0, n) * rng.choice([0.0, 1.0], n)
    if np.sum(p - c) < 1e-3:
        c[:] = 0.0
        p[0] = max(p[0], 0.5)
    return p, c


def random_shared(rng: np.random.Generator, n_max: int = 16):
    """Shared-contradiction frame masses: p_k = c + (1 - c) w_k, w on the simplex."""
    n = int(rng.integers(2, n_max + 1))
    c = float(rng.uniform(0.0, 0.95))
    w = rng.dirichlet(np.ones(n))
    return c + (1 - c) * w, c


def coherent_triple(rng: np.random.Generator, n: int):
    """Per-hypothesis (b, b_neg, b_contra) with b + b_neg - b_contra = 1 exactly in doubles."""
    # dyadic grid keeps the per-k identity exact
    b = rng.integers(0, 1025, n) / 1024
    b_neg = np.array([rng.integers(1024 - int(x * 1024), 1025) / 1024 for x in b])
    b_contra = b + b_neg - 1.0
    return b, b_neg, b_contra


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# -- acceptance reporting ---------------------------------------------------------

ACCEPTANCE: list[str] = []


def record(number: int, name: str, ok: bool, detail: str) -> None:
    ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} -- {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
