"""Large-system deterministic equivalents and closed-form regularization optima.

In the limit N, K -> infinity at fixed load beta = K/N, the per-user SINRs of
the regularized-inversion precoder concentrate on deterministic values that
depend only on (beta, rho, xi).  These closed forms drive the analytics module
and provide the two reference regularization parameters: the secrecy-aware
optimum (malicious users only) and the classical no-secrecy optimum beta/rho.
"""

from __future__ import annotations

import math

__all__ = ["g_function", "gamma_ls", "r_bcc_ls", "xi_bcc_opt", "xi_bc_opt"]


def _check_inputs(beta: float, xi: float, rho: float | None = None) -> None:
    if not (beta > 0):
        raise ValueError("beta must be positive")
    if not (xi > 0):
        raise ValueError("xi must be positive")
    if rho is not None and not (rho > 0):
        raise ValueError("rho must be positive")


def g_function(beta: float, xi: float) -> float:
    """Fixed-point factor g(beta, xi) of the large-system SINR equations."""
    _check_inputs(beta, xi)
    root = math.sqrt((1.0 - beta) ** 2 / xi**2 + 2.0 * (1.0 + beta) / xi + 1.0)
    return 0.5 * (root + (1.0 - beta) / xi - 1.0)


def gamma_ls(beta: float, rho: float, xi: float) -> tuple[float, float]:
    """Deterministic equivalents (gamma, gamma_M) of the two SINRs."""
    _check_inputs(beta, xi, rho)
    g = g_function(beta, xi)
    onepg2 = (1.0 + g) ** 2
    gamma = g * (rho + rho * xi / beta * onepg2) / (rho + onepg2)
    gamma_m = rho / onepg2
    return gamma, gamma_m


def r_bcc_ls(beta: float, rho: float, xi: float) -> float:
    """Large-system secrecy rate against the malicious users, bits/s/Hz.

    Computed as the difference of the two log terms, bit-for-bit the same
    arithmetic as the instantaneous secrecy rate, so the no-eavesdropper
    identities hold exactly.
    """
    gamma, gamma_m = gamma_ls(beta, rho, xi)
    return max(0.0, math.log2(1.0 + gamma) - math.log2(1.0 + gamma_m))


def xi_bcc_opt(beta: float, rho: float) -> float:
    """Closed-form regularization maximizing the large-system secrecy rate.

    The discriminant is accumulated with compensated summation; a rounding
    residue in [-1e-14, 0) is clamped to zero.  The published expression is
    evaluated verbatim: it is positive exactly where an interior optimum
    exists.  In parts of the overloaded regime (beta > 1 at high SNR) the
    secrecy rate is maximized at the xi -> 0 boundary or vanishes for every
    xi, and the expression returns a nonpositive value there.
    """
    _check_inputs(beta, 1.0, rho)
    disc = math.fsum(
        [
            beta**2 * rho**2,
            beta**2 * rho,
            beta**2,
            -2.0 * beta * rho**2,
            2.0 * beta * rho,
            rho**2,
        ]
    )
    if disc < 0:
        if disc < -1e-14:
            raise ArithmeticError(f"discriminant {disc} is negative beyond rounding")
        disc = 0.0
    numerator = (
        -2.0 * rho**2 * (1.0 - beta) ** 2
        + 6.0 * rho * beta
        + 2.0 * beta**2
        - 2.0 * (beta * (rho + 1.0) - rho) * math.sqrt(disc)
    )
    denominator = 6.0 * rho**2 * (beta + 2.0) + 6.0 * rho * beta
    return numerator / denominator


def xi_bc_opt(beta: float, rho: float) -> float:
    """Classical no-secrecy regularization optimum beta / rho."""
    _check_inputs(beta, 1.0, rho)
    return beta / rho
