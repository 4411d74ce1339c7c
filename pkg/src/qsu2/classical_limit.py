"""Contraction to the undeformed algebra as t -> 0.

At t = 0 the pair degenerates to s1 = J+ + J-, r1 = H + J+ - J- with
[s1, r1] = -2 r1 and the resolution r1 H = (r1^2 - s1^2)/2 - s1 + C,
C = 2l(l+1).  For small t the deformed generators approach these at first
order: s ~ t s1, r ~ 1 + t r1, R ~ 1 + t H.
"""

from dataclasses import dataclass

import numpy as np

from .qcore import GuardRailError, Spin, VerificationError, commutator, rel_residual
from .standard_rep import build_standard, derive_generators

__all__ = ["ClassicalTriple", "limit_residuals", "undeformed_su2"]


@dataclass(frozen=True)
class ClassicalTriple:
    spin: Spin
    s1: np.ndarray
    r1: np.ndarray
    H: np.ndarray
    casimir: float


def undeformed_su2(spin: Spin, tol: float = 1e-12) -> ClassicalTriple:
    """Classical generators with entries sqrt((l - m)(l + m + 1)), plus the
    checks [s1, r1] = -2 r1 and r1 H = (r1^2 - s1^2)/2 - s1 + 2l(l+1)."""
    mu = spin.weights()
    d = spin.dim
    l = spin.l
    H = np.diag(mu)
    Jp = np.zeros((d, d))
    for j in range(d - 1):
        m_next = mu[j + 1] / 2.0
        Jp[j, j + 1] = np.sqrt((l - m_next) * (l + m_next + 1.0))
    Jm = Jp.T.copy()
    s1 = Jp + Jm
    r1 = H + Jp - Jm
    casimir = spin.two_l * (spin.two_l + 2) / 2.0
    if rel_residual(commutator(s1, r1), -2.0 * r1) > 1e-13:
        raise VerificationError("[s1, r1] = -2 r1 failed")
    resolution = (r1 @ r1 - s1 @ s1) / 2.0 - s1 + casimir * np.eye(d)
    if rel_residual(r1 @ H, resolution) > tol:
        raise VerificationError("classical H-resolution identity failed")
    return ClassicalTriple(spin, s1, r1, H, casimir)


def limit_residuals(spin: Spin, t: float) -> dict:
    """Scale-aware first-order contraction residuals at deformation t.

    Returns rel_residual of s/t vs s1, (r - 1)/t vs r1, and (R - 1)/t vs H;
    each shrinks like t, so halving t should roughly halve every entry
    (callers estimate the convergence order by t-halving).
    """
    if not 0.0 < t <= 0.1:
        raise GuardRailError(f"limit probes need 0 < t <= 0.1, got {t}")
    triple = undeformed_su2(spin)
    gen = derive_generators(build_standard(spin, t))
    eye = np.eye(spin.dim)
    return {
        "s": rel_residual(gen.s / t, triple.s1),
        "r": rel_residual((gen.r - eye) / t, triple.r1),
        "R": rel_residual((gen.R - eye) / t, triple.H),
    }
