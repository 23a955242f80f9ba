"""Numerical search for Weyl-Heisenberg SIC fiducials.

Each restart starts from a seeded random unit vector and runs a
Levenberg-Marquardt descent on the overlap residuals
``|<phi|D_jk|phi>|^2 - 1/(d+1)``.  On the unit sphere the squared norm of
that residual vector equals ``frame_potential(phi) - (d-1)/(d+1)``, so every
accepted step strictly lowers the frame potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadDimension, NoConvergence, NotNormalized
from .quantum import SEARCHED_SIC_TOL, displacement_stack, fix_phase, overlaps

MAX_D = 8


def _check_unit(phi, d: int) -> np.ndarray:
    phi = np.asarray(phi, dtype=np.complex128).reshape(-1)
    if phi.shape != (d,):
        raise BadDimension(f"vector has {phi.size} components, expected {d}")
    nrm = np.linalg.norm(phi)
    if abs(nrm - 1.0) > 1e-12:
        raise NotNormalized(f"norm {nrm!r} != 1")
    return phi


def frame_potential(phi, d: int) -> float:
    """Sum of ``|<phi|D_jk|phi>|^4`` over the nontrivial displacements."""
    ov = overlaps(_check_unit(phi, d), d)
    return math.fsum(ov[1:] ** 2)


def frame_potential_bound(d: int) -> float:
    return (d - 1) / (d + 1)


def sic_residual(phi, d: int) -> float:
    ov = overlaps(_check_unit(phi, d), d)
    return float(np.max(np.abs(ov[1:] - 1.0 / (d + 1))))


@dataclass(frozen=True)
class SearchConfig:
    d: int
    seed: int = 0
    restarts: int = 8
    max_iters: int = 400
    target_residual: float = 1e-9
    damping: float = 1e-3

    def __post_init__(self):
        if not 2 <= self.d <= MAX_D:
            raise BadDimension(f"fiducial search supports 2 <= d <= {MAX_D}, got {self.d}")
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        if not self.target_residual > 0:
            raise ValueError("target_residual must be positive")


@dataclass(frozen=True, eq=False)
class SearchResult:
    d: int
    fiducial: np.ndarray
    sic_residual: float
    frame_potential: float
    restart_index: int
    iterations: int
    converged: bool
    # accepted-step values of frame_potential - (d-1)/(d+1), winning restart only
    history: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "sic": {"d": self.d,
                    "fiducial": [[float(z.real), float(z.imag)] for z in self.fiducial],
                    "tolerance": SEARCHED_SIC_TOL},
            "sic_residual": self.sic_residual,
            "frame_potential": self.frame_potential,
            "restart_index": self.restart_index,
            "iterations": self.iterations,
            "converged": self.converged,
        }


def _residuals_and_jacobian(x: np.ndarray, d: int, with_jac: bool = True):
    u = x[:d] + 1j * x[d:]
    s = float(x @ x)
    disp = displacement_stack(d)[1:]
    du = disp @ u
    g = du @ u.conj()
    g2 = np.abs(g) ** 2
    r = g2 / (s * s) - 1.0 / (d + 1)
    if not with_jac:
        return r, None
    dhu = np.conj(np.einsum("nji,j->ni", disp.conj(), u))
    dg_dx = du + dhu
    dg_dy = -1j * du + 1j * dhu
    gc = g.conj()[:, None]
    jac = np.hstack([2 * (gc * dg_dx).real, 2 * (gc * dg_dy).real]) / (s * s)
    jac -= (g2 / s ** 3)[:, None] * (4 * x)[None, :]
    return r, jac


def _descend(x: np.ndarray, d: int, max_iters: int, damping: float):
    x = x / np.linalg.norm(x)
    r, jac = _residuals_and_jacobian(x, d)
    cost = float(r @ r)
    history = [cost]
    lam = damping
    iters = 0
    while iters < max_iters and np.max(np.abs(r)) > 1e-14:
        iters += 1
        jtj = jac.T @ jac
        grad = jac.T @ r
        improved = False
        while lam < 1e12:
            step = np.linalg.solve(jtj + lam * (np.diag(np.diag(jtj)) + 1e-12 * np.eye(2 * d)), -grad)
            trial = x + step
            trial /= np.linalg.norm(trial)
            r_trial, _ = _residuals_and_jacobian(trial, d, with_jac=False)
            c_trial = float(r_trial @ r_trial)
            if c_trial < cost:
                x, cost = trial, c_trial
                r, jac = _residuals_and_jacobian(x, d)
                history.append(cost)
                lam = max(lam / 3, 1e-15)
                improved = True
                break
            lam *= 4
        if not improved:
            break
    return x, iters, history


def optimize(config: SearchConfig, raise_on_failure: bool = True) -> SearchResult:
    """Best of ``config.restarts`` seeded descents.

    Restart ``i`` draws its start from ``default_rng([seed, i])``, so results
    do not depend on evaluation order.  Raises :class:`NoConvergence` (with
    the best result attached) when no restart reaches ``target_residual``.
    """
    d = config.d
    best = None
    for i in range(config.restarts):
        rng = np.random.default_rng([config.seed, i])
        x0 = rng.standard_normal(2 * d)
        x, iters, history = _descend(x0, d, config.max_iters, config.damping)
        phi = fix_phase(x[:d] + 1j * x[d:])
        phi /= np.linalg.norm(phi)
        res = sic_residual(phi, d)
        if best is None or res < best.sic_residual:
            best = SearchResult(d, phi, res, frame_potential(phi, d), i, iters,
                                res <= config.target_residual, history)
    if not best.converged and raise_on_failure:
        raise NoConvergence(
            f"best sic_residual {best.sic_residual:.3g} above {config.target_residual:.3g}", best)
    return best
