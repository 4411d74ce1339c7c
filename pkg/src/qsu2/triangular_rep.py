"""Lower-triangular realisation of the bracket [s, r] = tanh(t)(s^2 - r^2 + 1).

s is diagonal with entries sinh(t * mu_j), mu_j = 2l + 2 - 2j, and r is lower
triangular with diagonal cosh(t * mu_j); the subdiagonal entries alpha_i are
free parameters and every deeper entry is a fixed multiple of a product of
consecutive alphas.  Two independent constructions of r are provided - the
closed form for each entry, and a direct diagonal-by-diagonal solve of the
entry recursion - and their agreement serves as an oracle for both.
"""

from dataclasses import dataclass

import numpy as np

from .qcore import Spin, VerificationError, check_deformation, rel_residual

__all__ = [
    "SRPair",
    "alpha_ratio_residual",
    "build_r_closed_form",
    "build_r_recursive",
    "build_s_diag",
    "build_sr",
    "chain_coefficient",
    "extract_and_check_alphas",
]


@dataclass(frozen=True)
class SRPair:
    """A diagonal s and lower-triangular r realising the defining bracket."""

    spin: Spin
    t: float
    s: np.ndarray
    r: np.ndarray


def _as_alphas(spin, alphas):
    if alphas is None:
        return np.ones(spin.two_l)
    a = np.asarray(alphas, dtype=float)
    if a.shape != (spin.two_l,):
        raise ValueError(f"expected {spin.two_l} subdiagonal parameters, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("subdiagonal parameters must be finite")
    return a


def build_s_diag(spin: Spin, t: float) -> np.ndarray:
    """Diagonal s with entries sinh(t(2l + 2 - 2j)), j = 1..2l+1."""
    check_deformation(spin, t)
    return np.diag(np.sinh(t * spin.weights()))


def chain_coefficient(spin: Spin, t: float, i: int, j: int) -> float:
    """Ratio between a depth-(i - j) entry of r and its alpha product (0-based, i > j).

    Depth 1 is the free subdiagonal (coefficient 1); each extra level divides
    by 2 cosh(t(2l - 2i + 2u)), u = 1..depth-1.
    """
    depth = i - j
    c = 0.5 ** (depth - 1)
    for u in range(1, depth):
        c /= np.cosh(t * (spin.two_l - 2 * i + 2 * u))
    return c


def build_r_closed_form(spin: Spin, t: float, alphas=None) -> np.ndarray:
    """r from the closed form: entry (i, j) is c_ij * alpha_{j+1} ... alpha_i."""
    check_deformation(spin, t)
    a = _as_alphas(spin, alphas)
    r = np.diag(np.cosh(t * spin.weights()))
    for i in range(1, spin.dim):
        for j in range(i - 1, -1, -1):
            r[i, j] = chain_coefficient(spin, t, i, j) * float(np.prod(a[j:i]))
    return r


def build_r_recursive(spin: Spin, t: float, alphas=None, positive_diagonal=True) -> np.ndarray:
    """r by solving the entry recursion directly, one subdiagonal at a time:

        2 cosh(t(2l + 2 - i - j)) sinh(t(i - j - 1)) r_ij
            = sinh(t) * sum_k r_ik r_kj   (1-based indices, j < k < i).

    Independent of the closed form; the suite uses their agreement as an
    oracle.  With ``positive_diagonal=False`` the sign-flipped diagonal
    branch is built: there the depth-1 coefficient sinh(2t) is nonzero, so
    the recursion forces every off-diagonal entry to zero and ``alphas`` must
    be omitted (kept for experiments; the positive branch is the one with the
    classical limit).
    """
    check_deformation(spin, t)
    d = spin.dim
    sign = 1.0 if positive_diagonal else -1.0
    if not positive_diagonal:
        if alphas is not None and np.any(np.asarray(alphas, dtype=float) != 0.0):
            raise ValueError("the negative-diagonal branch admits no free subdiagonal")
        return np.diag(-np.cosh(t * spin.weights()))
    a = _as_alphas(spin, alphas)
    r = np.diag(np.cosh(t * spin.weights()))
    for i in range(1, d):
        r[i, i - 1] = a[i - 1]
    for depth in range(2, d):
        for i in range(depth, d):
            j = i - depth
            acc = sum(r[i, k] * r[k, j] for k in range(j + 1, i))
            denom = 2.0 * np.cosh(t * (spin.two_l - i - j)) * np.sinh(t * (depth - sign))
            r[i, j] = np.sinh(t) * acc / denom
    return r


def build_sr(spin: Spin, t: float, alphas=None) -> SRPair:
    """Convenience bundle of build_s_diag and build_r_closed_form."""
    return SRPair(spin, float(t), build_s_diag(spin, t), build_r_closed_form(spin, t, alphas))


def alpha_ratio_residual(lower, spin: Spin, t: float) -> float:
    """Worst deviation of the gauge-invariant ratios entry / (alpha product)
    from the closed-form coefficients, over all depth >= 2 entries.

    Entries whose alpha product vanishes must themselves vanish and are
    compared absolutely on the same scale.
    """
    m = np.asarray(lower, dtype=float)
    d = spin.dim
    scale = 1.0 + float(np.max(np.abs(m)))
    alphas = np.array([m[k + 1, k] for k in range(d - 1)])
    worst = 0.0
    for depth in range(2, d):
        for i in range(depth, d):
            j = i - depth
            prod = float(np.prod(alphas[j:i]))
            c = chain_coefficient(spin, t, i, j)
            if prod == 0.0:
                worst = max(worst, abs(m[i, j]) / scale)
            else:
                worst = max(worst, rel_residual(m[i, j] / prod, c))
    return worst


def extract_and_check_alphas(lower, spin: Spin, t: float, tol: float = 1e-9) -> np.ndarray:
    """Read the free parameters off a lower-triangular family member.

    Checks that the input is lower triangular with the family diagonal, then
    verifies every deeper entry through the diagonal-similarity-invariant
    ratio entry / (alpha product) against the closed-form coefficient.
    Raises VerificationError when the input is not a member of the family,
    which makes this the recogniser used by the cross-construction tests.
    """
    m = np.asarray(lower, dtype=float)
    d = spin.dim
    if m.shape != (d, d):
        raise ValueError(f"expected a {d}x{d} matrix, got {m.shape}")
    scale = 1.0 + float(np.max(np.abs(m)))
    upper = np.triu(m, 1)
    if float(np.max(np.abs(upper))) > tol * scale:
        raise VerificationError("input is not lower triangular")
    diag_dev = rel_residual(np.diag(m), np.cosh(t * spin.weights()))
    if diag_dev > tol:
        raise VerificationError(f"diagonal deviates from cosh(t * mu_j) by {diag_dev:.3e}")
    worst = alpha_ratio_residual(m, spin, t)
    if worst > tol:
        raise VerificationError(f"coefficient ratios deviate by {worst:.3e}; not a family member")
    return np.array([m[k + 1, k] for k in range(d - 1)])
