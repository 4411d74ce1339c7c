"""Scalar and matrix primitives shared by every representation builder.

Everything here is a pure function of its arguments: q-numbers, commutators,
and the scale-aware residual norm used by all identity checks in this package.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GUARD_RAIL",
    "GuardRailError",
    "Spin",
    "VerificationError",
    "check_deformation",
    "commutator",
    "qnumber",
    "rel_residual",
]

# Below this |t| the ratio sinh(n t)/sinh(t) carries no significant digits;
# fall back to the continuous limit n.
Q_LIMIT = 1e-12

# Reject |t| * (2l + 1) beyond this: generator entries would pass ~e^26 and
# double precision could no longer resolve the identities being checked.
GUARD_RAIL = 26.0


class GuardRailError(ValueError):
    """Parameters outside the numerically trustworthy regime."""


class VerificationError(RuntimeError):
    """A self-check of a constructed object failed."""


@dataclass(frozen=True)
class Spin:
    """Spin label l stored as the integer 2l; fixes the dimension 2l + 1."""

    two_l: int

    def __post_init__(self):
        if not isinstance(self.two_l, (int, np.integer)) or self.two_l < 0:
            raise ValueError(f"two_l must be a non-negative integer, got {self.two_l!r}")

    @property
    def l(self) -> float:
        return self.two_l / 2.0

    @property
    def dim(self) -> int:
        return self.two_l + 1

    def weights(self) -> np.ndarray:
        """Diagonal labels 2m in descending order: 2l, 2l - 2, ..., -2l."""
        return np.arange(self.two_l, -self.two_l - 1, -2).astype(float)


def check_deformation(spin: Spin, t: float) -> None:
    """Reject t = 0 and parameter pairs past the dynamic-range guard rail."""
    if not np.isfinite(t):
        raise GuardRailError(f"deformation parameter must be finite, got {t!r}")
    if t == 0.0:
        raise GuardRailError("deformed constructions need t != 0; classical_limit serves t = 0")
    if abs(t) * spin.dim > GUARD_RAIL:
        raise GuardRailError(
            f"|t| * (2l + 1) = {abs(t) * spin.dim:.3g} exceeds {GUARD_RAIL}; entries beyond "
            "~e^26 exhaust double-precision comparisons"
        )


def qnumber(n: float, t: float) -> float:
    """Deformed number sinh(n t)/sinh(t), with the continuous limit n at t -> 0."""
    if abs(t) < Q_LIMIT:
        return float(n)
    return float(np.sinh(n * t) / np.sinh(t))


def commutator(a, b):
    """Matrix commutator a @ b - b @ a."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 2 or a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"commutator needs equal square matrices, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def rel_residual(a, b) -> float:
    """Scale-aware deviation max|a - b| / (1 + max|a| + max|b|).

    Large-entry matrices (sinh of large arguments) are compared relatively,
    small ones essentially absolutely; equal-valued inputs give exactly 0.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    num = float(np.max(np.abs(a - b)))
    den = 1.0 + float(np.max(np.abs(a))) + float(np.max(np.abs(b)))
    return num / den
