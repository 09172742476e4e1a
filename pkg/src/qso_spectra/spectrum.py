"""Dolbeault-Laplacian eigenvalues on zero forms, exact and rational.

The zero-form algebra decomposes multiplicity-freely over pairs
(k, l) of nonnegative integers (powers y^k z^l of the two spherical
generators); on the (k, l) component the Laplacian acts by

    lam(k, l) = theta (k)_{q^2} (k-1)_{q^-2} + (k)_{q^2} mu_y
              + (l)_{q^2} (k)_{q^2} theta1 + (l)_{q^-2} (k)_{q^-2} theta2
              + (l)_{q^-2} mu_z + (l)_{q^-2} (l-1)_{q^2} theta3,

with (m)_t = 1 + t + ... + t^{m-1}.  The six constants are inputs: the
admissible region is mu_y > 0, mu_z > 0, theta1 > 0, theta3 > 0 and
theta >= -(1 - q^-2) mu_y (boundary allowed), theta2 unconstrained.
The eigenspace multiplicity is the Weyl dimension of the highest
weight 2l*w_1 + k*lam_y with lam_y = 2*w_1 - alpha_1.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

from .cartan import CartanData
from .errors import BoundNotCleared, ParamsNotValidated


def _qint(m: int, t: Fraction) -> Fraction:
    """(m)_t = 1 + t + ... + t^{m-1}; zero for m <= 0."""
    total = Fraction(0)
    power = Fraction(1)
    for _ in range(m):
        total += power
        power *= t
    return total


class _QintTable:
    """Incremental (m)_t values for m = -1..mmax at t = q^2 and q^-2."""

    def __init__(self, p: SpectralParams, mmax: int):
        q2 = p.q * p.q
        iq2 = 1 / q2
        self.pos = [Fraction(0)] * (mmax + 2)
        self.neg = [Fraction(0)] * (mmax + 2)
        for m in range(1, mmax + 2):
            self.pos[m] = self.pos[m - 1] * q2 + 1
            self.neg[m] = self.neg[m - 1] * iq2 + 1
        self.p = p

    def value(self, k: int, l: int) -> Fraction:
        """lam(k, l) from the precomputed tables."""
        p = self.p
        kp, kn = self.pos[k], self.neg[k]
        lp, ln = self.pos[l], self.neg[l]
        return (
            p.theta * kp * self.neg[k - 1 if k else 0]
            + kp * p.mu_y
            + lp * kp * p.theta1
            + ln * kn * p.theta2
            + ln * p.mu_z
            + ln * self.pos[l - 1 if l else 0] * p.theta3
        )


class SpectralParams:
    """Exact rational Laplacian constants with a cached validation."""

    __slots__ = ("theta", "theta1", "theta2", "theta3", "mu_y", "mu_z",
                 "q", "validated")

    def __init__(self, theta=0, theta1=1, theta2=0, theta3=1,
                 mu_y=1, mu_z=1, q=Fraction(11, 10)):
        self.theta = Fraction(theta)
        self.theta1 = Fraction(theta1)
        self.theta2 = Fraction(theta2)
        self.theta3 = Fraction(theta3)
        self.mu_y = Fraction(mu_y)
        self.mu_z = Fraction(mu_z)
        self.q = Fraction(q)
        if self.q <= 0:
            raise ValueError("q must be positive")
        self.validated = None

    def as_dict(self) -> dict:
        return {
            "theta": str(self.theta), "theta1": str(self.theta1),
            "theta2": str(self.theta2), "theta3": str(self.theta3),
            "mu_y": str(self.mu_y), "mu_z": str(self.mu_z), "q": str(self.q),
        }


def validate_params(p: SpectralParams) -> dict:
    """Check the admissible-parameter region; caches the verdict on p.

    The theta lower bound is inclusive: on the boundary the k-lane
    (l = 0) eigenvalues converge to a finite limit instead of
    diverging, which is admissible but changes the divergence
    profile.  theta2 is unconstrained (its terms stay bounded).
    """
    q2 = p.q * p.q
    checks = [
        ("mu_y > 0", p.mu_y > 0),
        ("mu_z > 0", p.mu_z > 0),
        ("theta1 > 0", p.theta1 > 0),
        ("theta3 > 0", p.theta3 > 0),
        ("theta >= -(1 - q^-2) mu_y", p.theta >= -(1 - 1 / q2) * p.mu_y),
        ("q > 1", p.q > 1),
    ]
    failures = [name for name, ok in checks if not ok]
    p.validated = not failures
    return {
        "params": p.as_dict(),
        "checks": [{"constraint": name, "status": "pass" if ok else "fail"}
                   for name, ok in checks],
        "failures": failures,
        "boundary_theta": p.theta == -(1 - 1 / q2) * p.mu_y,
        "status": "verified" if not failures else "failed",
    }


def eigenvalue(k: int, l: int, p: SpectralParams) -> Fraction:
    """Exact eigenvalue lam(k, l); warns when p was never validated."""
    if k < 0 or l < 0:
        raise ValueError("k, l must be nonnegative")
    if p.validated is None:
        warnings.warn("spectral params used without validate_params",
                      ParamsNotValidated, stacklevel=2)
    q2 = p.q * p.q
    iq2 = 1 / q2
    return (
        p.theta * _qint(k, q2) * _qint(k - 1, iq2)
        + _qint(k, q2) * p.mu_y
        + _qint(l, q2) * _qint(k, q2) * p.theta1
        + _qint(l, iq2) * _qint(k, iq2) * p.theta2
        + _qint(l, iq2) * p.mu_z
        + _qint(l, iq2) * _qint(l - 1, q2) * p.theta3
    )


def y_weight(cartan: CartanData) -> tuple:
    """lam_y = 2 w_1 - alpha_1 in epsilon coordinates."""
    w1 = cartan.fundamental_weights[0]
    a1 = cartan.simple_roots[0]
    return tuple(2 * w - a for w, a in zip(w1, a1))


def eigen_weight(k: int, l: int, cartan: CartanData) -> tuple:
    """Highest weight 2l*w_1 + k*lam_y of the (k, l) eigenspace."""
    w1 = cartan.fundamental_weights[0]
    ly = y_weight(cartan)
    return tuple(2 * l * w + k * y for w, y in zip(w1, ly))


def multiplicity(k: int, l: int, cartan: CartanData) -> int:
    """Weyl dimension of the (k, l) eigenspace."""
    return cartan.weyl_dim(eigen_weight(k, l, cartan))


def spectrum_table(p: SpectralParams, cartan: CartanData,
                   kmax: int, lmax: int) -> list:
    """All records with k <= kmax, l <= lmax, sorted by (value, k+l, k)."""
    records = []
    for k in range(kmax + 1):
        for l in range(lmax + 1):
            value = eigenvalue(k, l, p)
            records.append({
                "k": k,
                "l": l,
                "value": value,
                "multiplicity": multiplicity(k, l, cartan),
                "weight": eigen_weight(k, l, cartan),
            })
    records.sort(key=lambda r: (r["value"], r["k"] + r["l"], r["k"]))
    return records


def check_divergence(p: SpectralParams, cartan: CartanData,
                     shell_max: int, bound) -> dict:
    """Certify shell divergence of the eigenvalue sequence.

    Computes the shell minima m |-> min_{k+l=m} lam(k, l) for
    m <= shell_max, finds the least m0 past which every shell minimum
    exceeds `bound`, and sums the multiplicities of all eigenvalues
    below `bound` (finite by construction once m0 exists).  The l = 0
    lane is tracked separately: on the boundary
    theta = -(1 - q^-2) mu_y it converges to a finite limit, so a bound
    above that limit is never cleared lane-wise.  Raises
    BoundNotCleared when the full shell minima never exceed the bound.
    """
    bound = Fraction(bound)
    table = _QintTable(p, shell_max)
    minima = []
    lane_l0 = []
    for m in range(shell_max + 1):
        vals = [table.value(m - l, l) for l in range(m + 1)]
        minima.append(min(vals))
        lane_l0.append(vals[0])
    m0 = None
    for m in range(shell_max, -1, -1):
        if minima[m] <= bound:
            break
        m0 = m
    if m0 is None:
        raise BoundNotCleared(
            f"shell minima never exceed {bound} within shell_max="
            f"{shell_max}; trajectory tail {[str(x) for x in minima[-5:]]}")
    below_mult = 0
    below_count = 0
    for m in range(m0):
        for l in range(m + 1):
            if table.value(m - l, l) <= bound:
                below_mult += multiplicity(m - l, l, cartan)
                below_count += 1
    lane_cleared = None
    for m in range(shell_max, -1, -1):
        if lane_l0[m] <= bound:
            break
        lane_cleared = m
    return {
        "params": p.as_dict(),
        "bound": str(bound),
        "shell_max": shell_max,
        "m0": m0,
        "shell_minima": [str(x) for x in minima],
        "eigenvalues_below_bound": below_count,
        "multiplicity_below_bound": below_mult,
        "l0_lane_cleared_at": lane_cleared,
        "l0_lane_limit_exists": p.theta == -(1 - 1 / (p.q * p.q)) * p.mu_y,
        "status": "verified",
    }
