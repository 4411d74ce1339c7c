"""Admissible Casimir values, the singular system R K = (s^2 - r^2 + 1)/2,
and recovery of the group-like generator R with spectrum {e^{t mu_j}}.

The constraint matrix K = cosh(t)(C sinh^2 t + (1 - r) cosh t + s sinh t) is
lower triangular with diagonal cosh(t)(C sinh^2 t + cosh t - cosh(t(mu_j - 1))),
so det K = 0 selects a finite list of admissible Casimir values C.  Only the
value C sinh^2 t = cosh(t(2l + 1)) - cosh(t) - the one a spin-l representation
actually takes - leaves the system consistent with an invertible solution; it
kills the last pivot, and the resulting affine family is pinned down by the
power-trace conditions Tr R^k = sum_j e^{k t mu_j}.
"""

from dataclasses import dataclass, field

import numpy as np

from . import identities
from . import _accurate as dd
from .qcore import Spin, VerificationError, check_deformation, rel_residual
from .standard_rep import build_standard, derive_generators, s_eigenbasis
from .triangular_rep import build_s_diag, build_sr

__all__ = [
    "CasimirChoice",
    "NoInvertibleSolutionError",
    "PipelineResult",
    "RFamily",
    "admissible_casimirs",
    "build_K",
    "fix_R_by_spectrum",
    "physical_casimir",
    "solve_R_family",
    "solve_physical_R",
    "verify_R",
]


class NoInvertibleSolutionError(RuntimeError):
    """R K = rhs is inconsistent at the singular pivot: no solution exists
    (in particular none with det R != 0) for this Casimir choice."""

    def __init__(self, row, residual):
        self.row = row
        self.residual = residual
        super().__init__(
            f"row {row}: the singular pivot's equation fails by {residual:.3e}; "
            "no invertible R for this Casimir value"
        )


@dataclass(frozen=True)
class CasimirChoice:
    """An admissible Casimir value and the K pivots it annihilates (0-based)."""

    value: float
    vanishing_indices: tuple
    physical: bool

    @property
    def vanishing_index(self) -> int:
        return self.vanishing_indices[0]


@dataclass
class RFamily:
    """Affine solution set {R0 + sum_i w_i e_i n^T} of R K = rhs.

    Every row of R sees the same singular column system, so the per-row
    freedom is the single left null vector n of K; ``freedoms`` lists the d
    rank-one basis matrices e_i n^T.
    """

    R0: np.ndarray
    null: np.ndarray
    K: np.ndarray
    rhs: np.ndarray
    vanishing_index: int
    w: np.ndarray | None = field(default=None)

    @property
    def dim(self) -> int:
        return self.R0.shape[0]

    @property
    def freedoms(self):
        eye = np.eye(self.dim)
        return [np.outer(eye[i], self.null) for i in range(self.dim)]

    def member(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        return self.R0 + np.outer(w, self.null)


def physical_casimir(spin: Spin, t: float) -> float:
    """(cosh(t(2l + 1)) - cosh t)/sinh^2 t = 2 sinh(t l) sinh(t(l + 1))/sinh^2 t."""
    check_deformation(spin, t)
    return float((np.cosh(t * (spin.two_l + 1)) - np.cosh(t)) / np.sinh(t) ** 2)


def admissible_casimirs(spin: Spin, t: float):
    """All C with det K = 0: C sinh^2 t = cosh(t(2l + 1 - 2j)) - cosh t, j = 1..2l+1.

    Values collapsing under |2l + 1 - 2j| are deduplicated (their K then has
    two vanishing pivots); the physical value is flagged.
    """
    check_deformation(spin, t)
    groups: dict[int, list[int]] = {}
    order = []
    for j in range(spin.dim):
        nu = abs(spin.two_l - 1 - 2 * j)
        if nu not in groups:
            groups[nu] = []
            order.append(nu)
        groups[nu].append(j)
    out = []
    for nu in order:
        value = float((np.cosh(t * nu) - np.cosh(t)) / np.sinh(t) ** 2)
        out.append(CasimirChoice(value, tuple(groups[nu]), physical=(nu == spin.two_l + 1)))
    return out


def build_K(sr, casimir: float) -> np.ndarray:
    """Constraint matrix cosh(t)(C sinh^2 t + (1 - r) cosh t + s sinh t).

    The sign of the s term is the one compatible with the scalar-Casimir
    identity and the worked low-dimensional families; with it the diagonal is
    cosh(t)(C sinh^2 t + cosh t - cosh(t(mu_j - 1))).
    """
    t = sr.t
    eye = np.eye(sr.spin.dim)
    return np.cosh(t) * (
        casimir * np.sinh(t) ** 2 * eye + (eye - sr.r) * np.cosh(t) + sr.s * np.sinh(t)
    )


def bracket_rhs_half(sr) -> np.ndarray:
    """(s^2 - r^2 + 1)/2, compensated so the exact diagonal cancellation survives."""
    return dd.hi(identities.bracket_rhs(sr.s, sr.r)) / 2.0


def solve_R_family(K, rhs, pivot_tol: float = 1e-10, consistency_tol: float = 1e-8) -> RFamily:
    """Solve R K = rhs for lower-triangular K with exactly one vanishing pivot.

    Row i of R satisfies sum_k R[i, k] K[k, j] = rhs[i, j]; back-substitution
    runs from j = d-1 downwards.  At the vanishing pivot the unknown is free
    (one parameter per row, direction = left null vector of K) and the
    pivot's own equation becomes a consistency condition; its failure is
    reported as NoInvertibleSolutionError.
    """
    K = np.asarray(K, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    d = K.shape[0]
    k_scale = 1.0 + float(np.max(np.abs(K)))
    vanish = np.where(np.abs(np.diag(K)) <= pivot_tol * k_scale)[0]
    if len(vanish) != 1:
        raise ValueError(
            f"solve_R_family needs exactly one vanishing pivot, found {len(vanish)} "
            f"(diagonal {np.diag(K)})"
        )
    j0 = int(vanish[0])
    n = np.zeros(d)
    n[j0] = 1.0
    for j in range(j0 - 1, -1, -1):
        n[j] = -(n[j + 1 :] @ K[j + 1 :, j]) / K[j, j]
    cons_scale = 1.0 + float(np.max(np.abs(rhs))) + k_scale
    R0 = np.zeros((d, d))
    for i in range(d):
        x = np.zeros(d)
        for j in range(d - 1, -1, -1):
            acc = rhs[i, j] - x[j + 1 :] @ K[j + 1 :, j]
            if j == j0:
                if abs(acc) > consistency_tol * cons_scale:
                    raise NoInvertibleSolutionError(i, abs(acc) / cons_scale)
                x[j] = 0.0
            else:
                x[j] = acc / K[j, j]
        R0[i] = x
    return RFamily(R0, n, K.copy(), rhs.copy(), j0)


def _r_from_K(K, spin: Spin, t: float) -> np.ndarray:
    """Recover r from K: the strict lower triangle of K is -cosh(t)^2 * r there."""
    r = np.diag(np.cosh(t * spin.weights()))
    strict = np.tril(np.asarray(K, dtype=float), -1)
    return r - strict / np.cosh(t) ** 2


def _sr_from_family(family: RFamily, spin: Spin, t: float):
    from .triangular_rep import SRPair

    return SRPair(spin, float(t), build_s_diag(spin, t), _r_from_K(family.K, spin, t))


def gauge_matched_basis(spin: Spin, t: float, alphas):
    """Basis change V with V^-1 (weight-basis generators) V = triangular family
    members carrying exactly the requested subdiagonal ``alphas``.

    Combines the s-eigenbasis of the weight-basis construction with the
    diagonal gauge that rescales the conjugated subdiagonal onto ``alphas``.
    Returns (V, Vinv).  Raises VerificationError when a zero subdiagonal
    blocks the gauge matching.
    """
    alphas = np.asarray(alphas, dtype=float)
    d = spin.dim
    gen = derive_generators(build_standard(spin, t))
    bc = s_eigenbasis(gen, spin)
    r_conj = bc.Uinv @ gen.r @ bc.U
    alphas_c = np.array([r_conj[k + 1, k] for k in range(d - 1)])
    if np.any(alphas_c == 0.0) or np.any(alphas == 0.0):
        raise VerificationError("gauge matching needs all subdiagonal parameters nonzero")
    gauge = np.ones(d)
    for i in range(1, d):
        gauge[i] = gauge[i - 1] * alphas[i - 1] / alphas_c[i - 1]
    V = bc.U / gauge[None, :]
    Vinv = gauge[:, None] * bc.Uinv
    return V, Vinv


def _oracle_seed(family: RFamily, spin: Spin, t: float):
    """Seed for the trace conditions: project the weight-basis generator
    e^{tH}, conjugated into the s-eigenbasis and gauge-matched to the
    family's subdiagonal, onto the affine family."""
    d = spin.dim
    r_target = _r_from_K(family.K, spin, t)
    alphas_t = np.array([r_target[k + 1, k] for k in range(d - 1)])
    try:
        V, Vinv = gauge_matched_basis(spin, t, alphas_t)
    except VerificationError:
        return np.zeros(d)
    R_oracle = Vinv @ np.diag(np.exp(t * spin.weights())) @ V
    n = family.null
    return (R_oracle - family.R0) @ n / float(n @ n)


def fix_R_by_spectrum(
    family: RFamily,
    spin: Spin,
    t: float,
    *,
    max_iter: int = 100,
    newton_tol: float = 1e-12,
    stall_tol: float = 1e-10,
    spectrum_tol: float = 1e-8,
    det_tol: float = 1e-9,
    relation_tol: float = 1e-9,
    inverse_tol: float = 1e-9,
    check_inverse: bool = True,
) -> np.ndarray:
    """Pick the family member whose power traces match sum_j e^{k t mu_j}, k = 1..d.

    Damped Newton on the (affine-in-w) trace conditions, seeded from the
    weight-basis oracle so the iteration is a polish rather than a search.
    The result is verified - spectrum {e^{t mu_j}}, det R = 1, intertwining
    with T+- = (s +- r -+ R)/(2 sinh t), and the inversion property
    R(t) R(-t) = 1 - and a violation is raised as VerificationError naming
    the relation.

    On the inversion check: the pair (-s, r) realises the algebra at -t with
    the *same* group-like element R, so the -t pipeline output is always a
    diagonal-gauge conjugate of R(t), never its literal inverse (for d > 2).
    The inversion property therefore lives over the common weight basis:
    both pipeline outputs are transported there through the construction's
    own gauge-matched basis changes and multiplied.  For d = 2 the bare
    product with sign-flipped subdiagonal happens to be the identity as
    well; the test suite pins that case separately.
    """
    d = spin.dim
    mu = spin.weights()
    targets = np.array([np.sum(np.exp(t * k * mu)) for k in range(1, d + 1)])
    row_scale = 1.0 + np.abs(targets)

    try:
        w = _oracle_seed(family, spin, t)
    except VerificationError:
        w = np.zeros(d)

    n = family.null

    def residual(wv):
        R = family.member(wv)
        g = np.empty(d)
        powers = [np.eye(d)]
        P = np.eye(d)
        for k in range(1, d + 1):
            P = P @ R
            powers.append(P)
            g[k - 1] = (np.trace(P) - targets[k - 1]) / row_scale[k - 1]
        return R, g, powers

    # Near small t*d the trace gradients are nearly parallel (R^k ~ 1 + k t H),
    # so steps use a truncated least-squares solve: flat directions stay at
    # whatever the seed provided instead of amplifying rounding noise.
    R, g, powers = residual(w)
    for _ in range(max_iter):
        if float(np.max(np.abs(g))) <= newton_tol:
            break
        J = np.empty((d, d))
        for k in range(1, d + 1):
            J[k - 1] = k * (powers[k - 1].T @ n) / row_scale[k - 1]
        step = np.linalg.lstsq(J, -g, rcond=1e-9)[0]
        norm0 = float(g @ g)
        lam = 1.0
        improved = False
        while lam >= 1e-12:
            R_new, g_new, powers_new = residual(w + lam * step)
            if float(g_new @ g_new) < norm0:
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
        w = w + lam * step
        R, g, powers = R_new, g_new, powers_new
    if float(np.max(np.abs(g))) > stall_tol:
        raise VerificationError(
            f"trace conditions stalled at scaled residual {float(np.max(np.abs(g))):.3e}"
        )

    predicted = np.exp(t * mu)
    spec_res = identities.spectrum_residual(np.linalg.eigvals(R), predicted)
    if spec_res > spectrum_tol:
        raise VerificationError(f"spectrum of R deviates from e^(t mu_j) by {spec_res:.3e}")
    det_dev = abs(float(np.linalg.det(R)) - 1.0)
    if det_dev > det_tol:
        raise VerificationError(f"det R deviates from 1 by {det_dev:.3e}")

    sr = _sr_from_family(family, spin, t)
    Tp = (sr.s + sr.r - R) / (2.0 * np.sinh(t))
    Tm = (sr.s - sr.r + R) / (2.0 * np.sinh(t))
    rel = identities.group_like_residuals(R, Tp, Tm, t)
    worst = max(rel, key=rel.get)
    if rel[worst] > relation_tol:
        raise VerificationError(f"relation {worst} fails at {rel[worst]:.3e}")

    if check_inverse:
        alphas = np.array([sr.r[k + 1, k] for k in range(d - 1)])
        if not np.any(alphas == 0.0):
            result = solve_physical_R(spin, -t, -alphas, check_inverse=False)
            V_t, Vinv_t = gauge_matched_basis(spin, t, alphas)
            V_m, Vinv_m = gauge_matched_basis(spin, -t, -alphas)
            product = (V_t @ R @ Vinv_t) @ (V_m @ result.R @ Vinv_m)
            inv_res = rel_residual(product, np.eye(d))
            if inv_res > inverse_tol:
                raise VerificationError(f"R(t) R(-t) deviates from 1 by {inv_res:.3e}")

    family.w = w
    return R


@dataclass(frozen=True)
class PipelineResult:
    """Everything the end-to-end construction produces for one (spin, t, alphas)."""

    spin: Spin
    t: float
    alphas: np.ndarray
    casimir: float
    sr: "object"
    K: np.ndarray
    family: RFamily
    R: np.ndarray


def solve_physical_R(spin: Spin, t: float, alphas=None, check_inverse: bool = True, **fix_kwargs) -> PipelineResult:
    """End-to-end pipeline: triangular pair -> physical Casimir -> K -> affine
    family -> trace-fixed R, with all verifications enabled."""
    sr = build_sr(spin, t, alphas)
    c = physical_casimir(spin, t)
    K = build_K(sr, c)
    family = solve_R_family(K, bracket_rhs_half(sr))
    R = fix_R_by_spectrum(family, spin, t, check_inverse=check_inverse, **fix_kwargs)
    used = np.array([sr.r[k + 1, k] for k in range(spin.dim - 1)])
    return PipelineResult(spin, float(t), used, c, sr, K, family, R)


def verify_R(R, sr, casimir: float | None = None) -> dict:
    """Scale-aware report on a candidate group-like generator.

    Residuals: both intertwining relations and the q-commutator with
    T+- reconstructed from (s, r, R); the direction of [K, s + r] against
    s^2 - r^2 + 1 (the fitted proportionality constant is reported, not
    asserted); the spectrum against {e^{t mu_j}}.  Also reports det R and a
    condition estimate for invertibility.  Thresholding is left to callers.
    """
    R = np.asarray(R, dtype=float)
    t = sr.t
    spin = sr.spin
    if casimir is None:
        casimir = physical_casimir(spin, t)
    K = build_K(sr, casimir)
    Tp = (sr.s + sr.r - R) / (2.0 * np.sinh(t))
    Tm = (sr.s - sr.r + R) / (2.0 * np.sinh(t))
    residuals = identities.group_like_residuals(R, Tp, Tm, t)
    constant, direction = identities.k_bracket_fit(K, sr.s, sr.r)
    residuals["k_bracket_direction"] = direction
    residuals["spectrum"] = identities.spectrum_residual(
        np.linalg.eigvals(R), np.exp(t * spin.weights())
    )
    return {
        "residuals": residuals,
        "fitted_bracket_constant": constant,
        "det": float(np.linalg.det(R)),
        "condition": float(np.linalg.cond(R)),
    }
