"""Shift-calculus checks of the one-variable realisation of the bracket.

On functions of x, the momentum exponential e^{mu p} acts exactly as the
argument shift f(x) -> f(x + mu), so every residual here reflects the
functional identity itself with no discretisation error.  Four checks:

* the phase-space (Poisson bracket) solution s = sinh(tp),
  r = cosh(tp) coth(nu x + phi) with nu = tanh(t)/t;
* the coupled functional equations for the coefficient functions A, B of
  r = (A(x) e^{tp} + e^{-tp} B(x))/2, solved by A = coth(x + F);
* the full operator bracket [s, r] = tanh(t)(s^2 - r^2 + 1) applied to
  analytic test functions, for both operator orderings of r;
* the ladder property sinh(tp) Theta = Theta sinh(t(p +- 2)) for
  Theta = F(p) e^{+-2x + f(p)}.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ClassicalSolution",
    "DEFAULT_TEST_FUNCTIONS",
    "LadderAnsatz",
    "QuantumRealization",
    "ladder_shift_residual",
    "operator_commutator_residual",
    "poisson_residual",
    "shift_eq_residual",
]

POLE_RADIUS = 0.1

DEFAULT_TEST_FUNCTIONS = (
    lambda x: np.ones_like(x),
    lambda x: x,
    lambda x: x**2,
    lambda x: np.exp(x / 3.0),
    lambda x: np.sin(x),
)


def _coth(u):
    return np.cosh(u) / np.sinh(u)


def _scaled_max(diff, lhs, rhs):
    return float(np.max(np.abs(diff) / (1.0 + np.abs(lhs) + np.abs(rhs))))


@dataclass(frozen=True)
class ClassicalSolution:
    """Phase-space solution on a grid of (p, x) points.

    ``nu`` defaults to tanh(t)/t, the value that solves the bracket; tests
    override it as a negative control.  Points within POLE_RADIUS of the
    coth pole are rejected.
    """

    t: float
    phi: float
    p: np.ndarray
    x: np.ndarray
    nu: float = None

    def __post_init__(self):
        object.__setattr__(self, "p", np.asarray(self.p, dtype=float).ravel())
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float).ravel())
        if self.p.shape != self.x.shape:
            raise ValueError("p and x grids must have matching shapes")
        if self.nu is None:
            object.__setattr__(self, "nu", float(np.tanh(self.t) / self.t))
        if float(np.min(np.abs(self.nu * self.x + self.phi))) < POLE_RADIUS:
            raise ValueError(f"grid approaches the coth pole closer than {POLE_RADIUS}")

    @classmethod
    def on_grid(cls, t, phi, p_values, x_values, nu=None):
        """Cartesian product grid of the given p and x samples."""
        pg, xg = np.meshgrid(np.asarray(p_values, float), np.asarray(x_values, float))
        return cls(t=t, phi=phi, p=pg.ravel(), x=xg.ravel(), nu=nu)


def poisson_residual(sol: ClassicalSolution) -> float:
    """max over the grid of |{s, r} - tanh t (s^2 - r^2 + 1)| / (1 + |s^2 - r^2 + 1|).

    The bracket {s, r} = ds/dp dr/dx - ds/dx dr/dp uses exact analytic
    partial derivatives.
    """
    t, nu, phi = sol.t, sol.nu, sol.phi
    u = nu * sol.x + phi
    cth = _coth(u)
    s = np.sinh(t * sol.p)
    r = np.cosh(t * sol.p) * cth
    ds_dp = t * np.cosh(t * sol.p)
    dr_dx = np.cosh(t * sol.p) * nu * (1.0 - cth**2)
    bracket = ds_dp * dr_dx  # ds/dx = 0, so the cross term vanishes
    target = np.tanh(t) * (s**2 - r**2 + 1.0)
    return float(np.max(np.abs(bracket - target) / (1.0 + np.abs(s**2 - r**2 + 1.0))))


@dataclass(frozen=True)
class QuantumRealization:
    """Operator realisation s = sinh(t p), r built from A(x) = coth(x + F).

    ``ordering`` selects which resolution of the selfconsistency condition is
    used: "momentum-first" is cosh(tp) coth(x+F) (coefficients A(x+t), B = A),
    "position-first" is coth(x+F) cosh(tp) (coefficients A, B = A(.+t)).
    """

    t: float
    F: float
    ordering: str = "momentum-first"

    def __post_init__(self):
        if self.ordering not in ("momentum-first", "position-first"):
            raise ValueError(f"unknown ordering {self.ordering!r}")

    def coeff_A(self, x):
        shift = self.t if self.ordering == "momentum-first" else 0.0
        return _coth(x + shift + self.F)

    def coeff_B(self, x):
        # both orderings satisfy B(x) = A(x - t)
        return self.coeff_A(x - self.t)

    def check_poles(self, xs, max_shift):
        xs = np.asarray(xs, dtype=float)
        offset = self.F + (self.t if self.ordering == "momentum-first" else 0.0)
        step = abs(self.t)
        shifts = np.arange(-abs(max_shift), abs(max_shift) + 0.5 * step, step)
        args = xs[:, None] + shifts[None, :] + offset
        if float(np.min(np.abs(args))) < POLE_RADIUS:
            raise ValueError(f"sample points approach a coth pole closer than {POLE_RADIUS}")

    def apply_s(self, f):
        t = self.t
        return lambda x: (f(x + t) - f(x - t)) / 2.0

    def apply_r(self, f):
        t = self.t
        return lambda x: (self.coeff_A(x) * f(x + t) + self.coeff_B(x - t) * f(x - t)) / 2.0


def shift_eq_residual(qr: QuantumRealization, xs) -> float:
    """Worst residual of the three coefficient equations, e.g.
    A(x + t) - A(x) = tanh t (1 - A(x + t) A(x)), plus the selfconsistency
    product (A(x) - B(x - t))(B(x) - A(x - t)) which the branch choice makes
    vanish identically."""
    xs = np.asarray(xs, dtype=float)
    qr.check_poles(xs, 2.0 * qr.t)
    t = qr.t
    th = np.tanh(t)
    A, B = qr.coeff_A, qr.coeff_B
    worst = 0.0
    for fn in (A, B):
        lhs = fn(xs + t) - fn(xs)
        rhs = th * (1.0 - fn(xs + t) * fn(xs))
        worst = max(worst, _scaled_max(lhs - rhs, lhs, rhs))
    lhs = A(xs) - A(xs - t) + B(xs) - B(xs - t)
    rhs = th * (2.0 - A(xs) * B(xs) - A(xs - t) * B(xs - t))
    worst = max(worst, _scaled_max(lhs - rhs, lhs, rhs))
    sel = (A(xs) - B(xs - t)) * (B(xs) - A(xs - t))
    worst = max(worst, float(np.max(np.abs(sel))))
    return worst


def operator_commutator_residual(qr: QuantumRealization, testfns=None, xs=None) -> float:
    """Pointwise residual of [s, r] f = tanh t ((s^2 - r^2 + 1) f) on analytic
    test functions, with e^{+-tp} realised as exact argument shifts."""
    if testfns is None:
        testfns = DEFAULT_TEST_FUNCTIONS
    if xs is None:
        xs = np.linspace(-1.0, 1.0, 21)
    xs = np.asarray(xs, dtype=float)
    qr.check_poles(xs, 2.0 * qr.t)
    th = np.tanh(qr.t)
    worst = 0.0
    for f in testfns:
        sf = qr.apply_s(f)
        rf = qr.apply_r(f)
        lhs = qr.apply_s(rf)(xs) - qr.apply_r(sf)(xs)
        rhs = th * (qr.apply_s(sf)(xs) - qr.apply_r(rf)(xs) + f(xs))
        worst = max(worst, _scaled_max(lhs - rhs, lhs, rhs))
    return worst


@dataclass(frozen=True)
class LadderAnsatz:
    """Ladder operators Theta_+- = F(p) e^{+- x_coeff * x + f(p)}.

    The p-dependence is applied through exact shift calculus: F(p) is a sum
    of exponentials sum_k c_k e^{mu_k p} given as (c_k, mu_k) pairs, and f(p)
    is affine (a, b) so that e^{f(p)} = e^b shift(a).  The defaults make
    Theta_+- plain multiplication by e^{+-2x}.
    """

    t: float
    x_coeff: float = 2.0
    prefactor: tuple = ((1.0, 0.0),)
    exponent: tuple = (0.0, 0.0)

    def apply_theta(self, sign, f):
        c_x = sign * self.x_coeff
        a, b = self.exponent

        def inner(x):
            return np.exp(c_x * x) * f(x)

        def shifted(x):
            return np.exp(b) * inner(x + a)

        def out(x):
            acc = 0.0
            for coef, mu in self.prefactor:
                acc = acc + coef * shifted(x + mu)
            return acc

        return out


def ladder_shift_residual(
    la: LadderAnsatz,
    testfns=None,
    xs=None,
    label_shift_plus: float = None,
    label_shift_minus: float = None,
) -> float:
    """Worst residual of sinh(tp) Theta_+- f = Theta_+- sinh(t(p + delta)) f
    with delta = +-x_coeff (the label shift the conjugation produces).

    sinh(t(p + delta)) acts as f -> (e^{delta t} f(x+t) - e^{-delta t} f(x-t))/2.
    Override the deltas to probe mismatched pairings (they fail, which is the
    point of the check).
    """
    if testfns is None:
        testfns = DEFAULT_TEST_FUNCTIONS
    if xs is None:
        xs = np.linspace(-1.0, 1.0, 21)
    xs = np.asarray(xs, dtype=float)
    t = la.t
    worst = 0.0
    for sign, override in ((1.0, label_shift_plus), (-1.0, label_shift_minus)):
        delta = sign * la.x_coeff if override is None else override
        for f in testfns:
            theta_f = la.apply_theta(sign, f)
            lhs = (theta_f(xs + t) - theta_f(xs - t)) / 2.0

            def shifted_label(x):
                return (np.exp(delta * t) * f(x + t) - np.exp(-delta * t) * f(x - t)) / 2.0

            rhs = la.apply_theta(sign, shifted_label)(xs)
            worst = max(worst, _scaled_max(lhs - rhs, lhs, rhs))
    return worst
