"""SIC-POVM quantum mechanics on dense complex matrices.

Matrices are plain ``complex128`` numpy arrays.  The validated wrappers
(:class:`DensityOp`, :class:`Projector`, :class:`SicSet`, :class:`SicProbVec`)
check their invariants on construction and are otherwise inert.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    BadIndex,
    DimensionMismatch,
    MassMismatch,
    NotDensity,
    NotHermitian,
    NotNormalized,
    NotProjector,
    NotSic,
)

MAX_DIM = 64
HERM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
IDEMPOTENT_TOL = 1e-10
MASS_TOL = 1e-10
ANALYTIC_SIC_TOL = 1e-12
SEARCHED_SIC_TOL = 1e-8


def as_cmat(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or not (1 <= m.shape[0] <= MAX_DIM and 1 <= m.shape[1] <= MAX_DIM):
        raise DimensionMismatch(f"expected a matrix of side <= {MAX_DIM}, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DimensionMismatch("matrix has non-finite entries")
    return m


def _herm_err(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def _square(m: np.ndarray) -> int:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"matrix is not square: {m.shape}")
    return m.shape[0]


@dataclass(frozen=True, eq=False)
class DensityOp:
    m: np.ndarray

    def __post_init__(self):
        m = as_cmat(self.m)
        _square(m)
        if _herm_err(m) > HERM_TOL:
            raise NotDensity(f"not Hermitian (error {_herm_err(m):.3g})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise NotDensity(f"trace {tr!r} != 1")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < -PSD_TOL:
            raise NotDensity(f"min eigenvalue {lo!r} < 0")
        m.flags.writeable = False
        object.__setattr__(self, "m", m)

    @property
    def d(self) -> int:
        return self.m.shape[0]


@dataclass(frozen=True, eq=False)
class Projector:
    """Rank-one orthogonal projector (Hermitian, idempotent, unit trace)."""

    m: np.ndarray

    def __post_init__(self):
        m = as_cmat(self.m)
        _square(m)
        if _herm_err(m) > HERM_TOL:
            raise NotProjector("not Hermitian")
        if float(np.max(np.abs(m @ m - m))) > IDEMPOTENT_TOL:
            raise NotProjector("not idempotent")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL:
            raise NotProjector("trace != 1")
        m.flags.writeable = False
        object.__setattr__(self, "m", m)

    @property
    def d(self) -> int:
        return self.m.shape[0]

    @classmethod
    def from_vector(cls, v) -> "Projector":
        v = np.asarray(v, dtype=np.complex128)
        nrm = np.linalg.norm(v)
        if abs(nrm - 1.0) > 1e-12:
            raise NotNormalized(f"vector norm {nrm!r} != 1")
        return cls(np.outer(v, v.conj()))


def _mat(x) -> np.ndarray:
    return x.m if isinstance(x, (DensityOp, Projector)) else as_cmat(x)


def born(rho, pi) -> float:
    """Tr(pi rho) for a state and an effect; both may be wrappers or raw arrays."""
    a, b = _mat(rho), _mat(pi)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    val = np.einsum("ij,ji->", b, a)
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise NotHermitian(f"trace has imaginary part {val.imag!r}")
    return float(val.real)


# -- Weyl-Heisenberg group ---------------------------------------------------------

def wh_displacement(d: int, j: int, k: int) -> np.ndarray:
    """``tau^(jk) X^j Z^k`` with ``tau = -exp(i pi/d)``, ``X|m> = |m+1>``, ``Z|m> = w^m |m>``."""
    if d < 1 or not (0 <= j < d and 0 <= k < d):
        raise BadIndex(f"need 0 <= j, k < d={d}, got ({j}, {k})")
    return _displacement(d, j, k).copy()


@lru_cache(maxsize=None)
def _displacement(d: int, j: int, k: int) -> np.ndarray:
    tau = -np.exp(1j * np.pi / d)
    phases = np.exp(2j * np.pi * k * np.arange(d) / d)
    out = np.zeros((d, d), dtype=np.complex128)
    # (X^j Z^k)|m> = w^(km) |m+j>
    out[(np.arange(d) + j) % d, np.arange(d)] = phases
    out *= tau ** ((j * k) % (2 * d))
    out.flags.writeable = False
    return out


@lru_cache(maxsize=None)
def displacement_stack(d: int) -> np.ndarray:
    """All ``d*d`` displacements, index ``j*d + k``, shape ``(d*d, d, d)``."""
    out = np.stack([_displacement(d, j, k) for j in range(d) for k in range(d)])
    out.flags.writeable = False
    return out


def fix_phase(phi) -> np.ndarray:
    """Rotate the global phase so the first nonzero component is real and positive."""
    phi = np.asarray(phi, dtype=np.complex128)
    idx = np.flatnonzero(np.abs(phi) > 1e-12)
    if idx.size == 0:
        return phi.copy()
    first = phi[idx[0]]
    out = phi * (abs(first) / first)
    out[idx[0]] = abs(first)
    return out


def overlaps(phi, d: int) -> np.ndarray:
    """``|<phi|D_jk|phi>|^2`` for all (j, k), flattened with index ``j*d + k``."""
    phi = np.asarray(phi, dtype=np.complex128)
    amps = np.einsum("i,nij,j->n", phi.conj(), displacement_stack(d), phi)
    return np.abs(amps) ** 2


# -- SIC sets ---------------------------------------------------------------------

def gram_residual(projectors: np.ndarray) -> float:
    """Max deviation of Tr(P_k P_l) from (d delta_kl + 1)/(d + 1)."""
    n, d, _ = projectors.shape
    gram = np.einsum("kij,lji->kl", projectors, projectors).real
    target = (d * np.eye(n) + 1.0) / (d + 1)
    return float(np.max(np.abs(gram - target)))


@dataclass(frozen=True, eq=False)
class SicSet:
    d: int
    projectors: np.ndarray
    fiducial: np.ndarray
    tolerance: float
    residual: float

    @property
    def n(self) -> int:
        return self.d * self.d


def sic_from_fiducial(phi, d: int, tolerance: float = ANALYTIC_SIC_TOL) -> SicSet:
    """Weyl-Heisenberg orbit of ``phi``; raises :class:`NotSic` if it is not a SIC."""
    phi = np.asarray(phi, dtype=np.complex128).reshape(-1)
    if phi.shape != (d,):
        raise DimensionMismatch(f"fiducial has {phi.size} components, expected {d}")
    nrm = np.linalg.norm(phi)
    if abs(nrm - 1.0) > 1e-12:
        raise NotNormalized(f"fiducial norm {nrm!r} != 1")
    phi = fix_phase(phi)
    vecs = np.einsum("nij,j->ni", displacement_stack(d), phi)
    projectors = np.einsum("ni,nj->nij", vecs, vecs.conj())
    residual = gram_residual(projectors)
    if residual > tolerance:
        raise NotSic(f"Gram residual {residual:.3g} exceeds {tolerance:.3g}")
    frame = projectors.sum(axis=0) - d * np.eye(d)
    if float(np.max(np.abs(frame))) > max(tolerance, 1e-12):
        raise NotSic("projectors do not resolve d times the identity")
    projectors.flags.writeable = False
    phi.flags.writeable = False
    return SicSet(d, projectors, phi, tolerance, residual)


def builtin_fiducial(d: int) -> np.ndarray:
    if d == 2:
        theta = math.acos(1 / math.sqrt(3))
        return np.array([math.cos(theta / 2), np.exp(1j * np.pi / 4) * math.sin(theta / 2)])
    if d == 3:
        return np.array([0.0, 1.0, -1.0], dtype=np.complex128) / math.sqrt(2)
    raise BadIndex(f"no built-in fiducial for d={d}; use the fiducial search")


@lru_cache(maxsize=None)
def builtin_sic(d: int) -> SicSet:
    """Validated tetrahedral (d=2) or Hesse (d=3) SIC."""
    return sic_from_fiducial(builtin_fiducial(d), d, ANALYTIC_SIC_TOL)


# -- SIC representation ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SicProbVec:
    d: int
    q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=np.float64).reshape(-1)
        if q.shape != (self.d * self.d,):
            raise DimensionMismatch(f"expected {self.d * self.d} probabilities, got {q.size}")
        if np.any(q < -1e-12) or np.any(q > 1 + 1e-12) or not np.all(np.isfinite(q)):
            raise NotNormalized("SIC probabilities must lie in [0, 1]")
        if abs(math.fsum(q) - self.d) > MASS_TOL:
            raise MassMismatch(f"SIC probabilities sum to {math.fsum(q)!r}, expected {self.d}")
        q.flags.writeable = False
        object.__setattr__(self, "q", q)


def sic_probs(rho, sic: SicSet) -> SicProbVec:
    m = _mat(rho)
    if m.shape != (sic.d, sic.d):
        raise DimensionMismatch(f"state has shape {m.shape}, SIC has d={sic.d}")
    q = np.einsum("kij,ji->k", sic.projectors, m).real
    return SicProbVec(sic.d, q)


def reconstruct(q: SicProbVec, sic: SicSet) -> np.ndarray:
    """Operator with SIC probabilities ``q``; Hermitian with unit trace, not necessarily PSD."""
    if q.d != sic.d:
        raise DimensionMismatch(f"probability vector for d={q.d}, SIC for d={sic.d}")
    d = sic.d
    if abs(math.fsum(q.q) - d) > MASS_TOL:
        raise MassMismatch(f"sum(q)={math.fsum(q.q)!r}, expected {d}")
    out = (d + 1) / d * np.einsum("k,kij->ij", q.q, sic.projectors) \
        - sic.projectors.sum(axis=0) / d
    assert _herm_err(out) <= 1e-10 and abs(np.trace(out).real - 1.0) <= 1e-10
    return out


def quantum_total(q: SicProbVec, t) -> float:
    """Tr(Sigma rho) from the SIC probabilities of rho and ``t_k = Tr(Sigma P_k)``."""
    t = np.asarray(t, dtype=np.float64).reshape(-1)
    d = q.d
    if t.shape != (d * d,):
        raise DimensionMismatch(f"expected {d * d} conditionals, got {t.size}")
    return (d + 1) / d * math.fsum(q.q * t) - math.fsum(t) / d


def effect_probs(sigma, sic: SicSet) -> np.ndarray:
    """``[Tr(Sigma P_k)]_k`` for an effect ``sigma``."""
    m = _mat(sigma)
    if m.shape != (sic.d, sic.d):
        raise DimensionMismatch(f"effect has shape {m.shape}, SIC has d={sic.d}")
    return np.einsum("kij,ji->k", sic.projectors, m).real


def eigh_checked(m) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian eigendecomposition; raises if any residual exceeds 1e-10."""
    m = as_cmat(m)
    _square(m)
    if _herm_err(m) > 1e-10:
        raise NotHermitian(f"Hermiticity error {_herm_err(m):.3g}")
    m = (m + m.conj().T) / 2
    w, v = np.linalg.eigh(m)
    resid = np.max(np.linalg.norm(m @ v - v * w, axis=0))
    if resid > 1e-10 * max(1.0, float(np.max(np.abs(w)))):
        raise NotHermitian(f"eigensolver residual {resid:.3g}")
    return w, v


def physicality(m) -> float:
    """Minimum eigenvalue of a Hermitian matrix; negative means not a state."""
    return float(eigh_checked(m)[0][0])


def random_density(d: int, seed: int) -> DensityOp:
    """Hilbert-Schmidt random state from a seeded complex Ginibre matrix."""
    if d < 2:
        raise DimensionMismatch(f"need d >= 2, got {d}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return DensityOp(m / np.trace(m).real)


def random_pure(d: int, rng: np.random.Generator) -> Projector:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    v /= np.linalg.norm(v)
    return Projector(np.outer(v, v.conj()))


# -- JSON ----------------------------------------------------------------------------

def matrix_to_json(m) -> dict:
    m = _mat(m)
    return {"d": int(m.shape[0]),
            "re_im": [[[float(z.real), float(z.imag)] for z in row] for row in m]}


def matrix_from_json(doc: dict) -> np.ndarray:
    try:
        rows = doc["re_im"]
        m = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)
        d = int(doc["d"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DimensionMismatch(f"malformed matrix document: {exc}") from exc
    if m.shape != (d, d):
        raise DimensionMismatch(f"declared d={d} but matrix has shape {m.shape}")
    return as_cmat(m)


def sic_to_json(sic: SicSet) -> dict:
    return {"d": sic.d,
            "fiducial": [[float(z.real), float(z.imag)] for z in sic.fiducial],
            "tolerance": sic.tolerance}


def sic_from_json(doc: dict) -> SicSet:
    """Load and re-validate a SIC file."""
    try:
        d = int(doc["d"])
        phi = np.array([complex(re, im) for re, im in doc["fiducial"]])
        tol = float(doc.get("tolerance", SEARCHED_SIC_TOL))
    except (KeyError, TypeError, ValueError) as exc:
        raise NotSic(f"malformed SIC document: {exc}") from exc
    # stored components are rounded; renormalize before the norm check
    phi = phi / np.linalg.norm(phi)
    return sic_from_fiducial(phi, d, tol)
