"""Numerical rules of paraconsistent Bayesian probability (PBPT).

A :class:`BeliefFrame` holds, for hypotheses ``A_1..A_N``, the masses
``p_k = P(A_k|I)`` and contradiction masses ``c_k = P(not A_k°|I)``; a
:class:`ConditionalTable` holds ``b_k = P(B|Ã_k, I)``.  Sums are taken with
:func:`math.fsum` throughout so the equality checks between rule forms are
limited by a single rounding per term.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadDimension,
    DegenerateFrame,
    DegenerateModel,
    FrameConflict,
    Incoherent,
    InvalidFrame,
    InvalidMass,
    InvalidTable,
    MassMismatch,
    NotNormalized,
    OutOfRange,
    ZeroEvidence,
)

TOL = 1e-12


def _unit(name: str, x: float) -> float:
    x = float(x)
    if not (-TOL <= x <= 1 + TOL):
        raise OutOfRange(f"{name}={x!r} outside [0, 1]")
    return x


def _in_unit(x: float) -> bool:
    return -TOL <= x <= 1 + TOL


# -- scalar rules -------------------------------------------------------------

def product_rule(p_a: float, p_b_given_a: float) -> float:
    """P(A,B|I) = P(A|I) P(B|A,I)."""
    return _unit("p_a", p_a) * _unit("p_b_given_a", p_b_given_a)


def bayes(prior: float, likelihood: float, evidence: float) -> float:
    prior, likelihood, evidence = (
        _unit("prior", prior), _unit("likelihood", likelihood), _unit("evidence", evidence))
    if evidence <= 0.0:
        raise ZeroEvidence("cannot condition on evidence of probability zero")
    value = prior * likelihood / evidence
    if value > 1 + TOL:
        raise Incoherent(f"prior*likelihood={prior * likelihood!r} exceeds evidence={evidence!r}")
    return value


def sum_rule_residual(p_a: float, p_not_a: float, p_contra_a: float) -> float:
    """``P(A) + P(not A) - P(not A°) - 1``; zero for a coherent assignment."""
    return float(p_a) + float(p_not_a) - float(p_contra_a) - 1.0


def extended_sum(p_a: float, p_b: float, p_ab: float) -> float:
    """P(A+B|I) = P(A|I) + P(B|I) - P(A,B|I)."""
    p_a, p_b, p_ab = _unit("p_a", p_a), _unit("p_b", p_b), _unit("p_ab", p_ab)
    if p_ab > min(p_a, p_b) + TOL:
        raise Incoherent(f"P(A,B)={p_ab!r} exceeds min(P(A), P(B))")
    value = p_a + p_b - p_ab
    if not _in_unit(value):
        raise Incoherent(f"P(A+B)={value!r} outside [0, 1]")
    return value


# -- frames ---------------------------------------------------------------------

@dataclass(frozen=True)
class BeliefFrame:
    """Hypothesis masses ``p`` and contradiction masses ``c``.

    With ``shared_contradiction`` all hypotheses share one contradictoriness
    proposition; its mass is the same for every k and the non-contradictory
    parts plus that mass must sum to one.  ``s`` records the total mass the
    shared contradiction was derived from (``None`` when ``c`` was explicit).
    """

    p: tuple[float, ...]
    c: tuple[float, ...]
    shared_contradiction: bool = False
    complete: bool = False
    s: float | None = None

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        c = tuple(float(x) for x in self.c)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "c", c)
        if not p:
            raise InvalidFrame("frame needs at least one hypothesis")
        if len(c) != len(p):
            raise InvalidFrame(f"len(c)={len(c)} differs from len(p)={len(p)}")
        for k, (pk, ck) in enumerate(zip(p, c)):
            if not all(map(math.isfinite, (pk, ck))):
                raise InvalidFrame(f"non-finite entry at k={k}")
            if not (-TOL <= ck and ck <= pk + TOL and pk <= 1 + TOL):
                raise InvalidFrame(f"need 0 <= c_k <= p_k <= 1, got p={pk!r}, c={ck!r} at k={k}")
        if self.shared_contradiction:
            if any(ck != c[0] for ck in c):
                raise InvalidFrame("shared contradiction requires equal c_k")
            total = math.fsum(pk - ck for pk, ck in zip(p, c)) + c[0]
            if abs(total - 1.0) > TOL:
                raise InvalidFrame(f"sum of non-contradictory parts plus c is {total!r}, not 1")
        elif self.complete and all(ck == 0.0 for ck in c):
            if abs(math.fsum(p) - 1.0) > TOL:
                raise InvalidFrame(f"complete classical frame has total mass {math.fsum(p)!r}")

    @property
    def n(self) -> int:
        return len(self.p)

    @classmethod
    def classical(cls, p: Sequence[float], complete: bool = True) -> "BeliefFrame":
        return cls(tuple(p), (0.0,) * len(p), complete=complete)

    @classmethod
    def shared(cls, p: Sequence[float], s: float | None = None) -> "BeliefFrame":
        """Frame whose hypotheses are all contradictory or all non-contradictory together.

        ``s`` defaults to ``sum(p)``; the contradiction mass is
        :func:`shared_contradiction_mass` of ``(len(p), s)``.
        """
        p = tuple(float(x) for x in p)
        if s is None:
            s = math.fsum(p)
        elif abs(float(s) - math.fsum(p)) > TOL:
            raise InvalidFrame(f"s={s!r} disagrees with sum(p)={math.fsum(p)!r}")
        c = shared_contradiction_mass(len(p), s)
        if c > min(p) + TOL:
            raise FrameConflict(f"contradiction mass {c!r} exceeds min p_k={min(p)!r}")
        return cls(p, (c,) * len(p), shared_contradiction=True, complete=True, s=float(s))

    def to_json(self) -> dict:
        doc: dict = {"n": self.n, "p": list(self.p)}
        if self.shared_contradiction and self.s is not None:
            doc["c"] = {"shared": True, "s": self.s}
        else:
            doc["c"] = list(self.c)
            if self.shared_contradiction:
                doc["shared"] = True
        doc["complete"] = self.complete
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "BeliefFrame":
        try:
            n, p, c = int(doc["n"]), doc["p"], doc["c"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidFrame(f"malformed frame document: {exc}") from exc
        if len(p) != n:
            raise InvalidFrame(f"n={n} but {len(p)} masses given")
        if isinstance(c, dict):
            if not c.get("shared"):
                raise InvalidFrame("object-valued 'c' must be {'shared': true, 's': ...}")
            return cls.shared(p, c["s"])
        return cls(tuple(p), tuple(c), shared_contradiction=bool(doc.get("shared", False)),
                   complete=bool(doc.get("complete", False)))


@dataclass(frozen=True)
class ConditionalTable:
    """Conditionals ``b_k = P(B|Ã_k,I)`` with optional companions for ``not B`` and ``not B°``."""

    b: tuple[float, ...]
    b_neg: tuple[float, ...] | None = None
    b_contra: tuple[float, ...] | None = None

    def __post_init__(self):
        for name in ("b", "b_neg", "b_contra"):
            vec = getattr(self, name)
            if vec is None:
                continue
            vec = tuple(float(x) for x in vec)
            object.__setattr__(self, name, vec)
            if len(vec) != len(self.b):
                raise InvalidTable(f"{name} has length {len(vec)}, expected {len(self.b)}")
            for k, x in enumerate(vec):
                if not (math.isfinite(x) and _in_unit(x)):
                    raise InvalidTable(f"{name}[{k}]={x!r} outside [0, 1]")
        if (self.b_neg is None) != (self.b_contra is None):
            raise InvalidTable("b_neg and b_contra must be given together")
        if self.b_neg is not None:
            for k, (x, y, z) in enumerate(zip(self.b, self.b_neg, self.b_contra)):
                if abs(sum_rule_residual(x, y, z)) > TOL:
                    raise InvalidTable(f"sum rule violated at k={k}: {x!r}+{y!r}-{z!r} != 1")

    @property
    def has_companions(self) -> bool:
        return self.b_neg is not None

    def to_json(self) -> dict:
        doc = {"b": list(self.b)}
        if self.has_companions:
            doc["b_neg"] = list(self.b_neg)
            doc["b_contra"] = list(self.b_contra)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "ConditionalTable":
        try:
            return cls(tuple(doc["b"]),
                       None if doc.get("b_neg") is None else tuple(doc["b_neg"]),
                       None if doc.get("b_contra") is None else tuple(doc["b_contra"]))
        except (KeyError, TypeError) as exc:
            raise InvalidTable(f"malformed table document: {exc}") from exc


@dataclass(frozen=True)
class QueryResult:
    value: float
    rule: str
    denominator: float
    numerator_terms: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"value": self.value, "rule": self.rule, "denominator": self.denominator,
                "numerator_terms": dict(self.numerator_terms)}


def dumps(doc: dict) -> str:
    # json writes floats with repr(), which round-trips doubles exactly
    return json.dumps(doc, allow_nan=False)


# -- frame-level rules ---------------------------------------------------------

def nc_part_mass(frame: BeliefFrame) -> list[float]:
    """P(Ã_k|I) = P(A_k|I) - P(not A_k°|I), clipped at zero only within tolerance."""
    out = []
    for pk, ck in zip(frame.p, frame.c):
        m = pk - ck
        if m < -TOL:
            raise InvalidFrame(f"negative non-contradictory mass {m!r}")
        out.append(max(m, 0.0))
    return out


def disjunction_nc(frame: BeliefFrame) -> float:
    """Probability of the disjunction of mutually exclusive non-contradictory parts."""
    value = math.fsum(frame.p) - math.fsum(frame.c)
    if not _in_unit(value):
        raise Incoherent(f"disjunction of non-contradictory parts has mass {value!r}")
    return value


def total_probability(frame: BeliefFrame, table: ConditionalTable) -> QueryResult:
    """P(B | sum_k Ã_k, I) from hypothesis masses, contradiction masses and conditionals."""
    if len(table.b) != frame.n:
        raise InvalidTable(f"table has {len(table.b)} entries for a frame of {frame.n}")
    return _total(frame, table.b)


def _total(frame: BeliefFrame, b: Sequence[float]) -> QueryResult:
    p, c = frame.p, frame.c
    weighted = math.fsum(pk * bk for pk, bk in zip(p, b))
    contra_weighted = math.fsum(ck * bk for ck, bk in zip(c, b))
    denom = math.fsum(pk - ck for pk, ck in zip(p, c))
    if denom <= 0.0:
        raise DegenerateFrame("all hypothesis mass is contradictory; conditioning undefined")
    value = (weighted - contra_weighted) / denom

    parts = nc_part_mass(frame)
    convex = math.fsum(m * bk for m, bk in zip(parts, b)) / math.fsum(parts)
    # both forms carry rounding proportional to the gross masses over the net mass
    scale = max(1.0, (math.fsum(p) + math.fsum(c)) / denom)
    assert abs(value - convex) <= 1e-14 * scale, (value, convex)
    return QueryResult(value, "pbpt-total", denom,
                       {"sum_p_b": weighted, "sum_c_b": contra_weighted})


def classical_total(p: Sequence[float], b: Sequence[float]) -> float:
    """Classical marginalization over a complete, exclusive set of hypotheses."""
    if len(p) != len(b):
        raise BadDimension(f"len(p)={len(p)} != len(b)={len(b)}")
    for name, vec in (("p", p), ("b", b)):
        for x in vec:
            _unit(name, x)
    total = math.fsum(p)
    if abs(total - 1.0) > TOL:
        raise NotNormalized(f"sum(p)={total!r}")
    return math.fsum(float(pk) * float(bk) for pk, bk in zip(p, b))


def shared_contradiction_mass(n: int, s):
    """Mass of the single contradictoriness shared by ``n`` hypotheses of total mass ``s``.

    Works on ``float`` or :class:`fractions.Fraction` (exact) inputs; the
    return type follows ``s``.
    """
    if n < 2:
        raise InvalidMass(f"need at least two hypotheses, got n={n}")
    exact = isinstance(s, Fraction)
    tol = 0 if exact else TOL
    if s < 1 - tol or s > n + tol:
        raise InvalidMass(f"total mass s={s!r} outside [1, {n}]")
    if exact:
        return (s - 1) / (n - 1)
    return (float(s) - 1.0) / (n - 1)


def toy_model_total(p: Sequence[float], b: Sequence[float]) -> float:
    """Total probability for hypotheses sharing one contradictoriness proposition."""
    if len(p) != len(b):
        raise BadDimension(f"len(p)={len(p)} != len(b)={len(b)}")
    for name, vec in (("p", p), ("b", b)):
        for x in vec:
            _unit(name, x)
    n = len(p)
    s = math.fsum(p)
    if s < 1 - TOL:
        raise InvalidMass(f"total mass S={s!r} below 1")
    if n - s <= 0.0:
        raise DegenerateModel(f"N - S = {n - s!r} leaves no non-contradictory mass")
    weighted = math.fsum(pk * bk for pk, bk in zip(p, b))
    return (n - 1) / (n - s) * weighted - (s - 1) / (n - s) * math.fsum(b)


def quantum_matched_total(d: int, q: Sequence[float], t: Sequence[float]) -> float:
    """The shared-contradiction rule with ``N = d*d`` hypotheses of total mass ``d``."""
    if d < 2 or len(q) != d * d or len(t) != d * d:
        raise BadDimension(f"expected {d * d} entries for d={d}, got {len(q)} and {len(t)}")
    for name, vec in (("q", q), ("t", t)):
        for x in vec:
            _unit(name, x)
    if abs(math.fsum(q) - d) > 1e-10:
        raise MassMismatch(f"sum(q)={math.fsum(q)!r}, expected {d}")
    weighted = math.fsum(float(qk) * float(tk) for qk, tk in zip(q, t))
    return (d + 1) / d * weighted - math.fsum(t) / d


def closure_check(frame: BeliefFrame, triple: ConditionalTable) -> float:
    """Sum-rule residual of the three total probabilities for B, not B and not B°."""
    if not triple.has_companions:
        raise InvalidTable("closure check needs b_neg and b_contra")
    if len(triple.b) != frame.n:
        raise InvalidTable(f"table has {len(triple.b)} entries for a frame of {frame.n}")
    v = _total(frame, triple.b).value
    v_neg = _total(frame, triple.b_neg).value
    v_contra = _total(frame, triple.b_contra).value
    return sum_rule_residual(v, v_neg, v_contra)
