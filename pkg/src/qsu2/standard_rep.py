"""Spin-l generators in the weight basis, their group-like companions, and the
change of basis that diagonalises the deformed J_x combination s.

The raising/lowering matrix elements are not part of the algebra's contract;
they are fixed here by the symmetric square-root convention and re-verified
against the commutation relations before a representation is returned.
"""

from dataclasses import dataclass

import numpy as np

from . import identities
from .qcore import Spin, VerificationError, check_deformation, qnumber, rel_residual

__all__ = [
    "BasisChange",
    "DerivedGenerators",
    "StandardRep",
    "build_standard",
    "casimir_value",
    "derive_generators",
    "s_eigenbasis",
]


@dataclass(frozen=True)
class StandardRep:
    """Generators H (diagonal), J+ (superdiagonal), J- (subdiagonal)."""

    spin: Spin
    t: float
    H: np.ndarray
    Jp: np.ndarray
    Jm: np.ndarray


@dataclass(frozen=True)
class DerivedGenerators:
    """T+-, the group-like R = e^{tH}, the pair Q+-, and s, r."""

    spin: Spin
    t: float
    Tp: np.ndarray
    Tm: np.ndarray
    R: np.ndarray
    Qp: np.ndarray
    Qm: np.ndarray
    s: np.ndarray
    r: np.ndarray


@dataclass(frozen=True)
class BasisChange:
    """Columns of U are s-eigenvectors, ordered by descending weight."""

    U: np.ndarray
    Uinv: np.ndarray


def build_standard(spin: Spin, t: float, tol: float = 1e-10) -> StandardRep:
    """Spin-l representation with H = diag(2l, 2l-2, ..., -2l).

    The only nonzero J+ entries sit on the superdiagonal with values
    sqrt([l-m][l+m+1]) in q-numbers; J- is the transpose pattern.  The
    constructor refuses to return matrices that miss the defining relations
    by more than ``tol``.
    """
    check_deformation(spin, t)
    mu = spin.weights()
    d = spin.dim
    H = np.diag(mu)
    Jp = np.zeros((d, d))
    l = spin.l
    for j in range(d - 1):
        m_next = mu[j + 1] / 2.0
        Jp[j, j + 1] = np.sqrt(qnumber(l - m_next, t) * qnumber(l + m_next + 1.0, t))
    Jm = Jp.T.copy()
    residuals = identities.suq2_relation_residuals(H, Jp, Jm, t)
    worst = max(residuals.values())
    if worst > tol:
        raise VerificationError(f"standard representation failed its self-check: {residuals}")
    return StandardRep(spin, float(t), H, Jp, Jm)


def derive_generators(rep: StandardRep, tol: float = 1e-11) -> DerivedGenerators:
    """T+- = e^{Ht/4} J+- e^{Ht/4}, R = e^{tH}, Q+- = T+- +- R/(2 sinh t),
    s = sinh t (T+ + T-), r = sinh t (T+ - T-) + R.

    Verifies the intertwining relations R T+- = e^{+-2t} T+- R and the
    q-commutator before returning.
    """
    t = rep.t
    mu = np.diag(rep.H)
    quarter = np.exp(t * mu / 4.0)
    conj = np.outer(quarter, quarter)
    Tp = rep.Jp * conj
    Tm = rep.Jm * conj
    R = np.diag(np.exp(t * mu))
    shift = R / (2.0 * np.sinh(t))
    Qp = Tp + shift
    Qm = Tm - shift
    s = np.sinh(t) * (Tp + Tm)
    r = np.sinh(t) * (Tp - Tm) + R
    residuals = identities.group_like_residuals(R, Tp, Tm, t)
    if max(residuals.values()) > tol:
        raise VerificationError(f"derived generators failed their self-check: {residuals}")
    return DerivedGenerators(rep.spin, t, Tp, Tm, R, Qp, Qm, s, r)


def casimir_value(rep: StandardRep, tol: float = 1e-10) -> float:
    """Scalar of J+J- + J-J+ + cosh(t)(cosh(tH) - 1)/sinh(t)^2.

    Raises when the matrix fails to be a multiple of the identity, which
    would mean the representation is not irreducible (a bug).
    """
    t = rep.t
    mu = np.diag(rep.H)
    cm = rep.Jp @ rep.Jm + rep.Jm @ rep.Jp
    cm = cm + np.diag(np.cosh(t) * (np.cosh(t * mu) - 1.0) / np.sinh(t) ** 2)
    c = float(np.trace(cm)) / rep.spin.dim
    if rel_residual(cm, c * np.eye(rep.spin.dim)) > tol:
        raise VerificationError("Casimir matrix is not scalar")
    return c


def _null_vector(a, tol_scale=1e-12):
    """One-dimensional null vector of a square matrix via complete-pivot
    elimination, polished by shifted inverse iteration on the same matrix.

    Complete pivoting is used because the strongly graded matrices here
    defeat row pivoting as a rank detector.  Raises when the null space is
    not one-dimensional; callers use this as a check that each claimed
    eigenvalue is actually a simple eigenvalue.
    """
    a = np.asarray(a, dtype=float)
    d = a.shape[0]
    u = a.copy()
    scale = 1.0 + float(np.max(np.abs(u)))
    tol = tol_scale * scale
    cols = np.arange(d)
    rank = d
    for k in range(d):
        block = np.abs(u[k:, k:])
        i, j = np.unravel_index(int(np.argmax(block)), block.shape)
        if block[i, j] <= tol:
            rank = k
            break
        i += k
        j += k
        if i != k:
            u[[k, i]] = u[[i, k]]
        if j != k:
            u[:, [k, j]] = u[:, [j, k]]
            cols[[k, j]] = cols[[j, k]]
        factors = u[k + 1 :, k] / u[k, k]
        u[k + 1 :, k:] -= np.outer(factors, u[k, k:])
        u[k + 1 :, k] = 0.0
    if rank == d:
        raise VerificationError(
            "no null direction found: the claimed eigenvalue is not an eigenvalue here"
        )
    if rank != d - 1:
        raise VerificationError(
            f"null space has dimension {d - rank}; the claimed eigenvalue is not simple"
        )
    x = np.zeros(d)
    x[d - 1] = 1.0
    for i in range(rank - 1, -1, -1):
        x[i] = -(u[i, i + 1 :] @ x[i + 1 :]) / u[i, i]
    v = np.zeros(d)
    v[cols] = x
    # shifted inverse iteration sharpens the direction at graded corners
    shifted = a + (1e3 * np.finfo(float).eps * scale) * np.eye(d)
    for _ in range(3):
        v = np.linalg.solve(shifted, v)
        v /= float(np.max(np.abs(v)))
    if float(np.max(np.abs(a @ v))) > 1e-8 * scale * float(np.max(np.abs(v))):
        raise VerificationError("inverse iteration did not converge to a null direction")
    return v


def s_eigenbasis(gen: DerivedGenerators, spin: Spin) -> BasisChange:
    """Diagonalise s using its known spectrum sinh(t * mu_j).

    No general eigensolver: each eigenvector solves (s - sinh(t mu_j)) v = 0
    by pivoted elimination, so a wrong spectral claim surfaces as a rank
    failure.  Columns are ordered by descending weight and scaled so their
    first component above rounding is 1 (any diagonal gauge is equivalent).
    """
    t = gen.t
    d = spin.dim
    eye = np.eye(d)
    U = np.zeros((d, d))
    for j, m in enumerate(spin.weights()):
        v = _null_vector(gen.s - np.sinh(t * m) * eye)
        first = int(np.nonzero(np.abs(v) > 1e-8 * np.max(np.abs(v)))[0][0])
        U[:, j] = v / v[first]
    Uinv = np.linalg.inv(U)
    # one Newton polish of the inverse; costs nothing, buys ~eps accuracy
    Uinv = Uinv + Uinv @ (eye - U @ Uinv)
    return BasisChange(U, Uinv)
