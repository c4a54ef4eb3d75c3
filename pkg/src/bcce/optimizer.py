"""Regularization-parameter selection.

Three flavors: the large-system optimum (argmax of the closed-form mean
secrecy rate), the per-realization optimum (argmax of one realized sum rate),
and the finite-system average optimum (argmax of a trial-averaged sum rate
under common random numbers).  None of the objectives is assumed unimodal: a
coarse log-grid scan locates the best cell, golden-section refinement runs
only inside it, and multiple coarse local maxima are flagged through
``converged``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import asymptotics
from .analytics import mean_secrecy_rate_ls
from .model import ChannelRealization, CollusionMode, EavesdropperField, SystemConfig
from .rates import bcce_rate
from .sampling import (
    DEFAULT_WINDOW_RADIUS,
    SeedPlan,
    StreamLabel,
    sample_channel,
    sample_field_stats,
)
from .sinr import XiSweepEvaluator

__all__ = ["OptimizeResult", "maximize_scalar", "xi_bcce_opt", "xi_star_realization", "xi_bar_finite"]

#: Default search bracket; spans every regime exercised by the experiments.
DEFAULT_BRACKET = (1e-5, 10.0)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

#: Relative spread below which an objective counts as flat over the bracket.
_FLAT_RTOL = 1e-12


@dataclass(frozen=True)
class OptimizeResult:
    """Outcome of a scalar regularization search."""

    xi_star: float
    objective_at_star: float
    bracket: tuple[float, float]
    evaluations: int
    converged: bool
    degenerate: bool = False  # objective identically zero over the bracket
    flat: bool = False        # objective constant over the bracket


def maximize_scalar(
    objective,
    lo: float = DEFAULT_BRACKET[0],
    hi: float = DEFAULT_BRACKET[1],
    n_coarse: int = 64,
    rel_width: float = 1e-4,
    degenerate_fallback: float | None = None,
) -> OptimizeResult:
    """Coarse log-grid scan plus golden-section refinement of a 1-D objective.

    Returns the best point seen across all evaluations.  A zero objective
    over the whole bracket yields ``degenerate_fallback`` (clamped into the
    bracket) with the degenerate flag; a constant objective returns the first
    grid point with the flat flag.
    """
    if not (0 < lo < hi):
        raise ValueError("need 0 < lo < hi")
    xs = np.geomspace(lo, hi, n_coarse)
    ys = np.array([objective(x) for x in xs], dtype=np.float64)
    evaluations = n_coarse

    y_max = float(ys.max())
    if y_max <= 0.0:
        xi = math.sqrt(lo * hi) if degenerate_fallback is None else degenerate_fallback
        xi = min(max(xi, lo), hi)
        return OptimizeResult(xi, 0.0, (lo, hi), evaluations, False, degenerate=True)
    if ys.max() - ys.min() <= _FLAT_RTOL * max(abs(y_max), 1.0):
        return OptimizeResult(float(xs[0]), y_max, (lo, hi), evaluations, True, flat=True)

    interior = (ys[1:-1] > ys[:-2]) & (ys[1:-1] > ys[2:])
    n_local = int(np.count_nonzero(interior))
    n_local += int(ys[0] > ys[1]) + int(ys[-1] > ys[-2])
    multimodal = n_local > 1

    i = int(np.argmax(ys))
    lo_cell = xs[max(i - 1, 0)]
    hi_cell = xs[min(i + 1, n_coarse - 1)]
    best_x, best_y = float(xs[i]), y_max

    a, b = math.log(lo_cell), math.log(hi_cell)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = objective(math.exp(c)), objective(math.exp(d))
    evaluations += 2
    for x_log, y in ((c, fc), (d, fd)):
        if y > best_y:
            best_x, best_y = math.exp(x_log), y
    while b - a > math.log1p(rel_width):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = objective(math.exp(c))
            evaluations += 1
            if fc > best_y:
                best_x, best_y = math.exp(c), fc
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = objective(math.exp(d))
            evaluations += 1
            if fd > best_y:
                best_x, best_y = math.exp(d), fd

    return OptimizeResult(
        xi_star=best_x,
        objective_at_star=best_y,
        bracket=(float(lo_cell), float(hi_cell)),
        evaluations=evaluations,
        converged=not multimodal,
    )


def xi_bcce_opt(
    cfg: SystemConfig,
    mode: CollusionMode | None = None,
    lo: float = DEFAULT_BRACKET[0],
    hi: float = DEFAULT_BRACKET[1],
) -> OptimizeResult:
    """Regularization maximizing the large-system mean secrecy rate.

    Falls back to the no-secrecy optimum beta/rho (flagged degenerate) when
    the objective vanishes over the whole bracket, which happens once the
    eavesdropper density is so high that every candidate is in sure outage.
    """
    mode = cfg.collusion_mode if mode is None else mode

    def objective(xi: float) -> float:
        return mean_secrecy_rate_ls(replace(cfg, regularization=xi), mode)

    fallback = asymptotics.xi_bc_opt(cfg.network_load, cfg.snr_linear)
    return maximize_scalar(objective, lo, hi, degenerate_fallback=fallback)


def xi_star_realization(
    h: ChannelRealization,
    field: EavesdropperField | None,
    cfg: SystemConfig,
    mode: CollusionMode | None = None,
    lo: float = DEFAULT_BRACKET[0],
    hi: float = DEFAULT_BRACKET[1],
) -> OptimizeResult:
    """Regularization maximizing the realized secrecy sum-rate of one draw."""
    mode = cfg.collusion_mode if mode is None else mode
    evaluator = XiSweepEvaluator(h, field, cfg)

    def objective(xi: float) -> float:
        gamma, gamma_m, gamma_e = evaluator.evaluate(xi, mode)
        return float(np.sum(bcce_rate(gamma, gamma_m, gamma_e)))

    fallback = asymptotics.xi_bc_opt(cfg.network_load, cfg.snr_linear)
    return maximize_scalar(objective, lo, hi, degenerate_fallback=fallback)


class _AveragedSumRate:
    """Trial-averaged sum-rate objective under common random numbers.

    All channel eigensystems and per-trial field statistics are drawn once
    from the trial-indexed substreams and reused for every candidate xi, so
    the objective is a deterministic function and repeated runs with the same
    master seed are bit-identical.  External SINRs follow the collapsed exact
    marginal law: user k sees ||w_k(xi)||^2 times the trial's unit-gain field
    statistic for the active collusion mode.
    """

    def __init__(self, cfg: SystemConfig, n_trials: int, fields_per_trial: int, mode: CollusionMode):
        self.cfg = cfg
        self.mode = mode
        n = cfg.n_antennas
        grams = np.empty((n_trials, cfg.n_users, cfg.n_users), dtype=np.complex128)
        z_stats = np.empty((n_trials, fields_per_trial))
        gamma_ref = None
        window = None
        if cfg.eavesdropper_density > 0:
            xi_ref = asymptotics.xi_bcc_opt(cfg.network_load, cfg.snr_linear)
            gamma_ref, _ = asymptotics.gamma_ls(cfg.network_load, cfg.snr_linear, xi_ref)
            if mode is not CollusionMode.COLLUDING:
                # the far-field tail rule protects colluding sums only; the
                # max/nearest statistics are insensitive beyond the default disc
                window = DEFAULT_WINDOW_RADIUS
        for t in range(n_trials):
            h = sample_channel(cfg, SeedPlan(cfg.master_seed, t, StreamLabel.CHANNEL))
            grams[t] = h.matrix_h @ h.matrix_h.conj().T
            stats = sample_field_stats(
                cfg, SeedPlan(cfg.master_seed, t, StreamLabel.FIELD), fields_per_trial,
                window_radius=window, gamma_ref=gamma_ref,
            )
            if mode is CollusionMode.COLLUDING:
                z_stats[t] = stats.sum_unit
            elif mode is CollusionMode.NON_COLLUDING:
                z_stats[t] = stats.max_unit
            else:
                z_stats[t] = stats.nearest_unit
        lam, u = np.linalg.eigh(grams)
        self.lam = np.maximum(lam, 0.0)  # (T, K)
        self.u = u                       # (T, K, K)
        self.z_stats = z_stats           # (T, J)
        self.n_antennas = n

    def __call__(self, xi: float) -> float:
        rho = self.cfg.snr_linear
        d = 1.0 / (self.lam + self.n_antennas * xi)            # (T, K)
        zeta = np.sum(self.lam * d * d, axis=1)                 # (T,)
        scaled = self.u * (self.lam * d)[:, None, :]
        a = scaled @ np.conj(np.swapaxes(self.u, 1, 2))         # (T, K, K), sqrt(zeta) H W
        a2 = np.abs(a) ** 2
        signal = np.einsum("tkk->tk", a2) / zeta[:, None]
        rows = a2.sum(axis=2) / zeta[:, None]
        cols = a2.sum(axis=1) / zeta[:, None]
        gamma = rho * signal / (1.0 + rho * (rows - signal))
        gamma_m = rho * np.maximum(cols - signal, 0.0)
        powers = np.einsum("tki,ti,tki->tk", self.u, self.lam * d * d, np.conj(self.u)).real
        m = np.maximum(powers, 0.0) / zeta[:, None]             # (T, K)
        gamma_e = self.z_stats[:, :, None] * m[:, None, :]      # (T, J, K)
        rate = bcce_rate(gamma[:, None, :], gamma_m[:, None, :], gamma_e)
        return float(rate.sum(axis=2).mean())


def xi_bar_finite(
    cfg: SystemConfig,
    n_trials: int,
    fields_per_trial: int = 4,
    mode: CollusionMode | None = None,
    lo: float = DEFAULT_BRACKET[0],
    hi: float = DEFAULT_BRACKET[1],
) -> OptimizeResult:
    """Regularization maximizing the trial-averaged simulated sum rate."""
    if n_trials < 1 or fields_per_trial < 1:
        raise ValueError("n_trials and fields_per_trial must be positive")
    mode = cfg.collusion_mode if mode is None else mode
    objective = _AveragedSumRate(cfg, n_trials, fields_per_trial, mode)
    fallback = asymptotics.xi_bc_opt(cfg.network_load, cfg.snr_linear)
    return maximize_scalar(objective, lo, hi, degenerate_fallback=fallback)
