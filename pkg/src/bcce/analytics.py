"""Closed-form outage probabilities, eavesdropper-SINR laws, mean secrecy
rates, antenna-count requirements, and the rate-loss bound.

Everything here is driven by the recurring constant

    mu = pi^(3/2) / (2 sqrt(beta sigma^2))

and by the deterministic equivalents (gamma, gamma_M) from the asymptotics
module.  The non-colluding outage form holds for any path-loss exponent
eta > 2; every colluding or nearest-eavesdropper closed form requires eta = 4
and raises :class:`ClosedFormUnavailable` otherwise (the simulation engine
covers general eta).  mu is rederived from the config at every call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy import integrate
from scipy import special as _sp

from . import asymptotics
from .model import ClosedFormUnavailable, CollusionMode, LargeSystemPoint, SystemConfig
from .rates import bcc_rate
from .specfun import gamma_fn, q_fn

__all__ = [
    "QuadratureError",
    "NearestOutageLS",
    "RateLossBound",
    "mu_constant",
    "outage_noncolluding",
    "outage_noncolluding_ls",
    "outage_nearest",
    "outage_nearest_ls",
    "outage_colluding",
    "outage_colluding_ls",
    "min_antennas",
    "prob_eve_beats_malicious",
    "density_gamma_E",
    "eve_sinr_cdf",
    "mean_secrecy_rate",
    "mean_secrecy_rate_ls",
    "rate_loss_bound",
    "nearest_distance_pdf",
    "laplace_colluding",
    "large_system_point",
]

_LN2 = math.log(2.0)


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, value: float, error_estimate: float):
        super().__init__(f"{message} (value={value!r}, error estimate={error_estimate!r})")
        self.value = value
        self.error_estimate = error_estimate


class NearestOutageLS(NamedTuple):
    """Both published variants of the nearest-eavesdropper outage limit.

    ``verbatim`` evaluates the printed large-system expansion, which carries
    no dependence on the legitimate SINR; ``at_gamma`` evaluates the exact
    finite-form at the deterministic equivalent instead.  The two disagree
    (the expansion looks like it dropped a sqrt(gamma) factor), so both are
    reported and nothing is silently corrected.
    """

    verbatim: float
    at_gamma: float


@dataclass(frozen=True)
class RateLossBound:
    """Rate loss due to external eavesdroppers and its upper bound."""

    delta_e: float
    delta_ub: float
    nu: float


def mu_constant(cfg: SystemConfig) -> float:
    """mu = pi^(3/2) / (2 sqrt(beta sigma^2))."""
    return math.pi**1.5 / (2.0 * math.sqrt(cfg.network_load * cfg.noise_power))


def _require_eta4(cfg: SystemConfig, what: str) -> None:
    if cfg.path_loss_exponent != 4.0:
        raise ClosedFormUnavailable(
            f"{what} is available in closed form only for path-loss exponent 4 "
            f"(got {cfg.path_loss_exponent}); use the simulation engine instead"
        )


def _gamma_pair(cfg: SystemConfig) -> tuple[float, float]:
    return asymptotics.gamma_ls(cfg.network_load, cfg.snr_linear, cfg.regularization)


def outage_noncolluding(gamma: float, gamma_m: float, cfg: SystemConfig) -> float:
    """Secrecy outage probability against non-colluding eavesdroppers.

    Valid for any path-loss exponent eta > 2:
    1 - exp(-2 pi lambda_e Gamma(2/eta) / (eta (N beta sigma^2 gamma)^(2/eta)))
    on the branch gamma > gamma_M, else 1.
    """
    if gamma <= gamma_m:
        return 1.0
    lam = cfg.eavesdropper_density
    if lam == 0.0:
        return 0.0
    eta = cfg.path_loss_exponent
    scale = cfg.n_antennas * cfg.network_load * cfg.noise_power * gamma
    exponent = 2.0 * math.pi * lam * gamma_fn(2.0 / eta) / (eta * scale ** (2.0 / eta))
    return -math.expm1(-exponent)


def outage_noncolluding_ls(cfg: SystemConfig) -> float:
    """Large-system limit of the non-colluding outage probability."""
    gamma, gamma_m = _gamma_pair(cfg)
    return outage_noncolluding(gamma, gamma_m, cfg)


def outage_nearest(gamma: float, gamma_m: float, cfg: SystemConfig) -> float:
    """Outage caused by the nearest eavesdropper alone (eta = 4 only).

    Written through the scaled complementary error function, which is the
    overflow-free form of (2 mu lam / sqrt(N gamma)) exp(mu^2 lam^2 /
    (pi N gamma)) Q(mu lam sqrt(2 / (pi N gamma))).
    """
    _require_eta4(cfg, "the nearest-eavesdropper outage")
    if gamma <= gamma_m:
        return 1.0
    lam = cfg.eavesdropper_density
    if lam == 0.0:
        return 0.0
    x = mu_constant(cfg) * lam / math.sqrt(cfg.n_antennas * gamma)
    return x * float(_sp.erfcx(x / math.sqrt(math.pi)))


def outage_nearest_ls(cfg: SystemConfig) -> NearestOutageLS:
    """Large-system nearest-eavesdropper outage, both published variants."""
    _require_eta4(cfg, "the nearest-eavesdropper outage")
    gamma, gamma_m = _gamma_pair(cfg)
    if gamma <= gamma_m:
        return NearestOutageLS(verbatim=1.0, at_gamma=1.0)
    x = mu_constant(cfg) * cfg.eavesdropper_density / math.sqrt(cfg.n_antennas)
    verbatim = x * (1.0 + x * x / math.pi) * (1.0 - 2.0 * x / math.pi)
    return NearestOutageLS(verbatim=verbatim, at_gamma=outage_nearest(gamma, gamma_m, cfg))


def outage_colluding(gamma: float, gamma_m: float, cfg: SystemConfig) -> float:
    """Secrecy outage probability against colluding eavesdroppers (eta = 4)."""
    _require_eta4(cfg, "the colluding outage")
    if gamma <= gamma_m:
        return 1.0
    lam = cfg.eavesdropper_density
    if lam == 0.0:
        return 0.0
    arg = mu_constant(cfg) * lam * math.sqrt(math.pi / (2.0 * cfg.n_antennas * gamma))
    return 1.0 - 2.0 * q_fn(arg)


def outage_colluding_ls(cfg: SystemConfig) -> float:
    """Large-system limit of the colluding outage probability."""
    gamma, gamma_m = _gamma_pair(cfg)
    return outage_colluding(gamma, gamma_m, cfg)


def outage_ls(cfg: SystemConfig, mode: CollusionMode | None = None) -> float:
    """Mode-matched large-system outage (nearest uses the at-gamma variant)."""
    mode = cfg.collusion_mode if mode is None else mode
    if mode is CollusionMode.NON_COLLUDING:
        return outage_noncolluding_ls(cfg)
    if mode is CollusionMode.COLLUDING:
        return outage_colluding_ls(cfg)
    return outage_nearest_ls(cfg).at_gamma


def min_antennas(
    epsilon: float, lambda_e: float, beta: float, sigma2: float, gamma: float
) -> int:
    """Smallest antenna count guaranteeing outage below epsilon.

    Applies on the gamma > gamma_M branch; the same bound covers both
    collusion strategies.  Doubling lambda_e quadruples the requirement.
    """
    if not (0.0 < epsilon < 1.0):
        raise ValueError("epsilon must lie in (0, 1)")
    if lambda_e < 0 or beta <= 0 or sigma2 <= 0 or gamma <= 0:
        raise ValueError("invalid parameters for the antenna bound")
    mu = math.pi**1.5 / (2.0 * math.sqrt(beta * sigma2))
    bound = (mu * lambda_e / (epsilon * math.sqrt(gamma))) ** 2
    return max(1, math.floor(bound) + 1)


def prob_eve_beats_malicious(
    gamma_m: float, cfg: SystemConfig, mode: CollusionMode | None = None
) -> float:
    """P(gamma_E >= gamma_M), the chance the externals out-hear the alliance."""
    mode = cfg.collusion_mode if mode is None else mode
    lam = cfg.eavesdropper_density
    if lam == 0.0:
        return 0.0
    if gamma_m < 0:
        raise ValueError("gamma_m must be nonnegative")
    if gamma_m == 0.0:
        return 1.0
    _require_eta4(cfg, "the eavesdropper-vs-alliance probability")
    mu_lam = mu_constant(cfg) * lam
    n = cfg.n_antennas
    if mode is CollusionMode.NON_COLLUDING:
        return -math.expm1(-mu_lam / math.sqrt(n * gamma_m))
    if mode is CollusionMode.COLLUDING:
        return 1.0 - 2.0 * q_fn(mu_lam * math.sqrt(math.pi / (2.0 * n * gamma_m)))
    raise ClosedFormUnavailable(
        "the eavesdropper-vs-alliance probability has no nearest-only closed form"
    )


def _density_params(cfg: SystemConfig, mode: CollusionMode) -> tuple[float, float, float]:
    """(prefactor c, linear-exponent a, quadratic-exponent b) of f_gammaE.

    In the substituted variable u = 1/sqrt(y), the density integrates as
    2c exp(-a u) du (non-colluding) or 2c exp(-b u^2) du (colluding).
    """
    _require_eta4(cfg, "the eavesdropper-SINR density")
    mu_lam = mu_constant(cfg) * cfg.eavesdropper_density
    n = cfg.n_antennas
    c = mu_lam / (2.0 * math.sqrt(n))
    if mode is CollusionMode.NON_COLLUDING:
        return c, mu_lam / math.sqrt(n), 0.0
    if mode is CollusionMode.COLLUDING:
        return c, 0.0, math.pi * mu_lam**2 / (4.0 * n)
    raise ClosedFormUnavailable("the eavesdropper-SINR density has no nearest-only form")


def density_gamma_E(y, cfg: SystemConfig, mode: CollusionMode | None = None):
    """Density of the external-eavesdropper SINR at y > 0 (eta = 4 only)."""
    mode = cfg.collusion_mode if mode is None else mode
    c, a, b = _density_params(cfg, mode)
    arr = np.asarray(y, dtype=np.float64)
    if np.any(arr <= 0):
        raise ValueError("the SINR density is defined for y > 0")
    if a:
        out = c * arr**-1.5 * np.exp(-a / np.sqrt(arr))
    else:
        out = c * arr**-1.5 * np.exp(-b / arr)
    return float(out) if out.ndim == 0 else out


def eve_sinr_cdf(y, cfg: SystemConfig, mode: CollusionMode | None = None):
    """Closed-form CDF of the external-eavesdropper SINR (eta = 4 only).

    The complementary value 1 - F(y) is the outage probability at threshold
    y, matching the corresponding outage lemma on its active branch.
    """
    mode = cfg.collusion_mode if mode is None else mode
    _require_eta4(cfg, "the eavesdropper-SINR distribution")
    arr = np.asarray(y, dtype=np.float64)
    if np.any(arr <= 0):
        raise ValueError("the SINR distribution is defined for y > 0")
    mu_lam = mu_constant(cfg) * cfg.eavesdropper_density
    n = cfg.n_antennas
    if mode is CollusionMode.NON_COLLUDING:
        out = np.exp(-mu_lam / np.sqrt(n * arr))
    elif mode is CollusionMode.COLLUDING:
        out = 2.0 * q_fn(mu_lam * np.sqrt(math.pi / (2.0 * n * arr)))
    else:
        raise ClosedFormUnavailable("the eavesdropper-SINR distribution has no nearest-only form")
    return float(out) if np.ndim(out) == 0 else out


def _log_rate_integral(gamma: float, gamma_m: float, cfg: SystemConfig, mode: CollusionMode) -> float:
    """Integral of log2(1+y) f_gammaE(y) dy over [gamma_M, gamma].

    Evaluated by adaptive Gauss-Kronrod quadrature at relative tolerance 1e-9
    with an absolute floor of 1e-14.  For small lower limits the substitution
    u = 1/sqrt(y) removes the y^(-3/2) prefactor.
    """
    if gamma <= gamma_m:
        return 0.0
    c, a, b = _density_params(cfg, mode)
    if c == 0.0:
        return 0.0

    if gamma_m >= 1e-3:
        if a:
            integrand = lambda y: math.log2(1.0 + y) * c * y**-1.5 * math.exp(-a / math.sqrt(y))
        else:
            integrand = lambda y: math.log2(1.0 + y) * c * y**-1.5 * math.exp(-b / y)
        lo, hi = gamma_m, gamma
    else:
        if a:
            integrand = lambda u: 2.0 * c * math.log2(1.0 + 1.0 / (u * u)) * math.exp(-a * u)
        else:
            integrand = lambda u: 2.0 * c * math.log2(1.0 + 1.0 / (u * u)) * math.exp(-b * u * u)
        lo = 1.0 / math.sqrt(gamma)
        hi = 1.0 / math.sqrt(gamma_m) if gamma_m > 0 else np.inf

    result = integrate.quad(integrand, lo, hi, epsabs=1e-14, epsrel=1e-9, limit=200, full_output=1)
    value, abserr = result[0], result[1]
    if len(result) > 3:
        raise QuadratureError(f"rate-density quadrature did not converge: {result[3]}", value, abserr)
    if abserr > max(1e-13, 1e-8 * abs(value)):
        raise QuadratureError("rate-density quadrature error above tolerance", value, abserr)
    return value


def mean_secrecy_rate(
    gamma: float, gamma_m: float, cfg: SystemConfig, mode: CollusionMode | None = None
) -> float:
    """Mean secrecy rate over eavesdropper placements at fixed (gamma, gamma_M).

    Zero when gamma <= gamma_M; reduces exactly to the no-eavesdropper rate
    when lambda_e = 0.  Requires eta = 4 (the SINR density does).
    """
    mode = cfg.collusion_mode if mode is None else mode
    if gamma <= gamma_m:
        return 0.0
    if cfg.eavesdropper_density == 0.0:
        return bcc_rate(gamma, gamma_m)
    if mode is CollusionMode.NON_COLLUDING:
        o_k = outage_noncolluding(gamma, gamma_m, cfg)
    elif mode is CollusionMode.COLLUDING:
        o_k = outage_colluding(gamma, gamma_m, cfg)
    else:
        raise ClosedFormUnavailable("the mean secrecy rate has no nearest-only closed form")
    _require_eta4(cfg, "the mean secrecy rate")
    p_k = prob_eve_beats_malicious(gamma_m, cfg, mode)
    head = (1.0 - o_k) * math.log2(1.0 + gamma) - (1.0 - p_k) * math.log2(1.0 + gamma_m)
    value = head - _log_rate_integral(gamma, gamma_m, cfg, mode)
    # the exact expectation is nonnegative; shave quadrature-level residue
    return max(0.0, value)


def mean_secrecy_rate_ls(cfg: SystemConfig, mode: CollusionMode | None = None) -> float:
    """Large-system mean secrecy rate with external eavesdroppers."""
    gamma, gamma_m = _gamma_pair(cfg)
    return mean_secrecy_rate(gamma, gamma_m, cfg, mode)


def rate_loss_bound(cfg: SystemConfig, mode: CollusionMode | None = None) -> RateLossBound:
    """Secrecy-rate loss from external eavesdroppers and its nu lambda/sqrt(N) bound."""
    mode = cfg.collusion_mode if mode is None else mode
    gamma, gamma_m = _gamma_pair(cfg)
    r_bcc = bcc_rate(gamma, gamma_m)
    if gamma <= gamma_m:
        return RateLossBound(delta_e=0.0, delta_ub=0.0, nu=0.0)
    mu = mu_constant(cfg)
    nu = mu * (r_bcc / math.sqrt(gamma) + max(0.0, math.sqrt(gamma) - math.sqrt(gamma_m)))
    delta_ub = nu * cfg.eavesdropper_density / math.sqrt(cfg.n_antennas)
    delta_e = r_bcc - mean_secrecy_rate(gamma, gamma_m, cfg, mode)
    return RateLossBound(delta_e=delta_e, delta_ub=delta_ub, nu=nu)


def nearest_distance_pdf(x, lambda_e: float):
    """Density of the distance to the nearest point of a planar PPP."""
    if lambda_e < 0:
        raise ValueError("lambda_e must be nonnegative")
    arr = np.asarray(x, dtype=np.float64)
    out = np.where(arr > 0, 2.0 * lambda_e * math.pi * arr * np.exp(-lambda_e * math.pi * arr**2), 0.0)
    return float(out) if out.ndim == 0 else out


def laplace_colluding(s, cfg: SystemConfig):
    """Laplace transform of the colluding eavesdropper SINR (any eta > 2)."""
    arr = np.asarray(s, dtype=np.float64)
    if np.any(arr < 0):
        raise ValueError("the Laplace transform is evaluated for s >= 0")
    eta = cfg.path_loss_exponent
    two_over_eta = 2.0 / eta
    scale = cfg.n_antennas * cfg.network_load * cfg.noise_power
    coeff = (
        math.pi
        * cfg.eavesdropper_density
        * scale**-two_over_eta
        * gamma_fn(1.0 + two_over_eta)
        * gamma_fn(1.0 - two_over_eta)
    )
    out = np.exp(-coeff * arr**two_over_eta)
    return float(out) if out.ndim == 0 else out


def large_system_point(cfg: SystemConfig, mode: CollusionMode | None = None) -> LargeSystemPoint:
    """Full closed-form summary at one config (non-colluding or colluding)."""
    mode = cfg.collusion_mode if mode is None else mode
    if mode is CollusionMode.NEAREST_ONLY:
        raise ClosedFormUnavailable(
            "the large-system summary needs the mean-rate machinery, which has "
            "no nearest-only form; use outage_nearest_ls for the outage column"
        )
    gamma, gamma_m = _gamma_pair(cfg)
    r_bcc = bcc_rate(gamma, gamma_m)
    if mode is CollusionMode.NON_COLLUDING:
        outage = outage_noncolluding(gamma, gamma_m, cfg)
    else:
        outage = outage_colluding(gamma, gamma_m, cfg)
    p_circ = prob_eve_beats_malicious(gamma_m, cfg, mode)
    r_mean = mean_secrecy_rate(gamma, gamma_m, cfg, mode)
    loss = rate_loss_bound(cfg, mode)
    return LargeSystemPoint(
        gamma_ls=gamma,
        gamma_m_ls=gamma_m,
        r_bcc_ls=r_bcc,
        outage_ls=outage,
        p_ls=p_circ,
        r_mean_ls=r_mean,
        delta_ub=loss.delta_ub,
        mu=mu_constant(cfg),
        nu=loss.nu,
    )
