"""Residual evaluators for the operator identities this package verifies.

All residuals are scale-aware in the sense of ``qcore.rel_residual``.  The
quadratic and cubic identities run on compensated products (``_accurate``) so
the reported numbers reflect the algebra, not rounding of large hyperbolic
entries near the guard rail.
"""

import numpy as np

from . import _accurate as dd
from .qcore import commutator, rel_residual

__all__ = [
    "bracket_rhs",
    "defining_residual",
    "group_like_residuals",
    "k_bracket_fit",
    "reordering_residuals",
    "spectrum_residual",
    "suq2_relation_residuals",
    "two_generator_residual",
]


def _dd_rel(x, y):
    diff = dd.sub(x, y)
    num = float(np.max(np.abs(dd.hi(diff)), initial=0.0))
    den = 1.0 + float(np.max(np.abs(x[0]), initial=0.0)) + float(np.max(np.abs(y[0]), initial=0.0))
    return num / den


def bracket_rhs(s, r):
    """s^2 - r^2 + 1 as a compensated pair."""
    sp = dd.from_double(np.asarray(s, float))
    rp = dd.from_double(np.asarray(r, float))
    x = dd.sub(dd.matmul(sp, sp), dd.matmul(rp, rp))
    return dd.add(x, dd.identity(x[0].shape[0]))


def defining_residual(s, r, t):
    """Residual of the defining bracket [s, r] = tanh(t)(s^2 - r^2 + 1)."""
    sp = dd.from_double(np.asarray(s, float))
    rp = dd.from_double(np.asarray(r, float))
    lhs = dd.sub(dd.matmul(sp, rp), dd.matmul(rp, sp))
    rhs = dd.scale(bracket_rhs(s, r), np.tanh(t))
    return _dd_rel(lhs, rhs)


def reordering_residuals(s, r, t):
    """The three reorderings that move s + r through s^2 - r^2 + 1.

    (s - r)(s + r) + 1      = e^t / cosh t   * (s^2 - r^2 + 1)
    (s + r)(s - r) + 1      = e^{-t} / cosh t * (s^2 - r^2 + 1)
    (s^2 - r^2 + 1)(s + r)  = e^{2t} (s + r)(s^2 - r^2 + 1)
    """
    sp = dd.from_double(np.asarray(s, float))
    rp = dd.from_double(np.asarray(r, float))
    plus = dd.add(sp, rp)
    minus = dd.sub(sp, rp)
    eye = dd.identity(sp[0].shape[0])
    x = bracket_rhs(s, r)
    left_a = dd.add(dd.matmul(minus, plus), eye)
    left_b = dd.add(dd.matmul(plus, minus), eye)
    return {
        "reorder_plus": _dd_rel(left_a, dd.scale(x, np.exp(t) / np.cosh(t))),
        "reorder_minus": _dd_rel(left_b, dd.scale(x, np.exp(-t) / np.cosh(t))),
        "reorder_push": _dd_rel(dd.matmul(x, plus), dd.scale(dd.matmul(plus, x), np.exp(2.0 * t))),
    }


def suq2_relation_residuals(H, Jp, Jm, t):
    """Residuals of [H, J+-] = +-2 J+- and [J+, J-] = sinh(tH)/sinh(t) (H diagonal)."""
    target = np.diag(np.sinh(t * np.diag(H)) / np.sinh(t))
    return {
        "weight_raise": rel_residual(commutator(H, Jp), 2.0 * Jp),
        "weight_lower": rel_residual(commutator(H, Jm), -2.0 * Jm),
        "ladder_bracket": rel_residual(commutator(Jp, Jm), target),
    }


def group_like_residuals(R, Tp, Tm, t):
    """Residuals of R T+- = e^{+-2t} T+- R and the q-commutator of T+, T-."""
    e2 = np.exp(2.0 * t)
    lhs = np.exp(t) * (Tp @ Tm) - np.exp(-t) * (Tm @ Tp)
    rhs = (R @ R - np.eye(R.shape[0])) / (2.0 * np.sinh(t))
    return {
        "intertwine_plus": rel_residual(R @ Tp, e2 * (Tp @ R)),
        "intertwine_minus": rel_residual(R @ Tm, (Tm @ R) / e2),
        "q_bracket": rel_residual(lhs, rhs),
    }


def two_generator_residual(Qp, Qm, t):
    """Residual of e^t Q+ Q- - e^{-t} Q- Q+ = -1/(2 sinh t)."""
    lhs = np.exp(t) * (Qp @ Qm) - np.exp(-t) * (Qm @ Qp)
    rhs = -np.eye(Qp.shape[0]) / (2.0 * np.sinh(t))
    return rel_residual(lhs, rhs)


def spectrum_residual(computed, predicted):
    """Scale-aware set distance max_j min_k |computed_k - predicted_j|."""
    computed = np.asarray(computed)
    predicted = np.asarray(predicted, dtype=float)
    dists = np.abs(computed[None, :] - predicted[:, None])
    num = float(np.max(np.min(dists, axis=1)))
    den = 1.0 + float(np.max(np.abs(computed))) + float(np.max(np.abs(predicted)))
    return num / den


def k_bracket_fit(K, s, r):
    """Fit c in [K, s + r] = c (s^2 - r^2 + 1); return (c, direction residual).

    The proportionality direction is an identity of the family; the constant
    is reported rather than asserted (it comes out e^t sinh t for the sign
    conventions used by build_K).
    """
    kp = dd.from_double(np.asarray(K, float))
    plus = dd.add(dd.from_double(np.asarray(s, float)), dd.from_double(np.asarray(r, float)))
    bracket = dd.sub(dd.matmul(kp, plus), dd.matmul(plus, kp))
    x = bracket_rhs(s, r)
    bh = dd.hi(bracket)
    xh = dd.hi(x)
    denom = float(np.sum(xh * xh))
    if denom == 0.0:
        return 0.0, float(np.max(np.abs(bh)))
    c = float(np.sum(bh * xh) / denom)
    return c, _dd_rel(bracket, dd.scale(x, c))
