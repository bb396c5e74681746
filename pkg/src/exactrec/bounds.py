"""Closed-form failure-probability bounds for the two recovery stages.

All logarithms and exponentials are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParametersError


@dataclass(frozen=True)
class RecoveryBounds:
    eps1: float
    eps2: float
    combined_success: float
    phi_used: float
    dmax_used: int
    n: int
    p: float
    q: float

    @property
    def vacuous(self):
        """True when the guarantee 1 - eps1 - eps2 says nothing (is <= 0)."""
        return self.combined_success <= 0.0


def eps1_exponent(phi, dmax, p):
    num = 3.0 * (1.0 - 2.0 * p) ** 2 * phi**4
    den = 1536.0 * dmax**3 * p * (1.0 - p) + 32.0 * (1.0 - 2.0 * p) * (1.0 - p) * phi**2 * dmax
    return num / den


def eps1(phi, dmax, p, n):
    """Stage-one failure bound 2n exp(-3(1-2p)^2 phi^4 / (1536 dmax^3 p(1-p) + 32(1-2p)(1-p) phi^2 dmax))."""
    if not phi > 0:
        raise InvalidParametersError(f"phi must be > 0, got {phi}")
    if dmax < 1:
        raise InvalidParametersError(f"dmax must be >= 1, got {dmax}")
    if not 0.0 < p < 0.5:
        raise InvalidParametersError(f"p must lie in (0, 0.5), got {p}")
    if n < 1:
        raise InvalidParametersError(f"n must be >= 1, got {n}")
    return 2.0 * n * math.exp(-eps1_exponent(phi, dmax, p))


def eps2(n, q):
    """Stage-two (wrong global sign) failure bound exp(-(n/2)(1-2q)^2)."""
    if n < 1:
        raise InvalidParametersError(f"n must be >= 1, got {n}")
    if not 0.0 < q < 0.5:
        raise InvalidParametersError(f"q must lie in (0, 0.5), got {q}")
    return math.exp(-0.5 * n * (1.0 - 2.0 * q) ** 2)


def combined(phi, dmax, n, p, q):
    """Bounds for exact recovery; never clamped, so vacuous values show up as such."""
    e1 = eps1(phi, dmax, p, n)
    e2 = eps2(n, q)
    return RecoveryBounds(e1, e2, 1.0 - e1 - e2, float(phi), int(dmax), int(n), p, q)


def complete_graph_stats(n):
    """(phi, dmax, n) for K_n: phi = ceil(n/2), dmax = n - 1."""
    return float(math.ceil(n / 2)), n - 1, n


def expander_stats(n, d, c):
    """(phi lower bound c*d, dmax = d, n) for a d-regular expander with constant c."""
    return float(c * d), d, n


def smoothed_cheeger_bound(n, epsilon):
    """Expansion lower bound eps/(256 + 256 log n) after adding ER(n, eps/n) edges,
    and the probability n^(-2.2 - log(eps)/2) complement with which it holds."""
    if n < 2:
        raise InvalidParametersError(f"n must be >= 2, got {n}")
    if not 1.0 <= epsilon <= n:
        raise InvalidParametersError(f"epsilon must lie in [1, n={n}], got {epsilon}")
    log_n = math.log(n)
    phi_lb = epsilon / (256.0 + 256.0 * log_n)
    prob_lb = 1.0 - n ** (-2.2 - math.log(epsilon) / 2.0)
    return phi_lb, prob_lb
