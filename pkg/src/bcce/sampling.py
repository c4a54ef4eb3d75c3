"""All randomness: channels, Poisson eavesdropper fields, and substreams.

Substreams are derived by hashing ``(master_seed, trial_index, stream_label,
draw_index)`` through a counter-based construction, so every sampler is a pure
function of its seed plan: results never depend on execution order, worker
count, or batch size.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from . import asymptotics
from .model import ChannelRealization, EavesdropperField, SystemConfig

__all__ = [
    "StreamLabel",
    "SeedPlan",
    "FieldStats",
    "substream",
    "sample_channel",
    "sample_eavesdropper_field",
    "effective_eve_gain",
    "colluding_window_radius",
    "default_gamma_ref",
    "sample_field_stats",
]

#: Default truncation radius of the sampled disc.
DEFAULT_WINDOW_RADIUS = 30.0

#: Colluding-mode tail budget: neglected far-field mean must stay below
#: ``TAIL_FRACTION * gamma_ref``.
TAIL_FRACTION = 1e-6

#: Point budget per batch of the bulk sampler (memory/imprecision tradeoff).
_BATCH_POINT_BUDGET = 4_000_000

#: Beyond this many expected points per field the bulk sampler switches from
#: growing the window to sampling an inner disc exactly and adding the exact
#: far-field mean (whose residual fluctuation is kept below the tail budget).
_MAX_POINTS_PER_FIELD = 2_000_000


class StreamLabel(enum.IntEnum):
    CHANNEL = 0
    FIELD = 1
    EVE_CHANNEL = 2


@dataclass(frozen=True)
class SeedPlan:
    """Address of one independent random substream."""

    master_seed: int
    trial_index: int = 0
    stream_label: StreamLabel = StreamLabel.CHANNEL
    draw_index: int = 0

    def as_tuple(self) -> tuple:
        return (
            int(self.master_seed),
            int(self.trial_index),
            StreamLabel(self.stream_label).name,
            int(self.draw_index),
        )


def substream(plan: SeedPlan, extra: tuple = ()) -> np.random.Generator:
    """Counter-based generator for the given plan (plus optional sub-keys)."""
    if plan.trial_index < 0 or plan.draw_index < 0:
        raise ValueError("trial and draw indices must be nonnegative")
    seq = np.random.SeedSequence(
        entropy=int(plan.master_seed) & ((1 << 64) - 1),
        spawn_key=(int(plan.trial_index), int(plan.stream_label), int(plan.draw_index), *extra),
    )
    return np.random.Generator(np.random.Philox(seq))


def sample_channel(cfg: SystemConfig, plan: SeedPlan) -> ChannelRealization:
    """Draw the K x N downlink matrix with i.i.d. unit-variance complex entries."""
    if plan.stream_label != StreamLabel.CHANNEL:
        raise ValueError("sample_channel requires a Channel-labelled plan")
    gen = substream(plan)
    shape = (cfg.n_users, cfg.n_antennas)
    h = math.sqrt(0.5) * (gen.standard_normal(shape) + 1j * gen.standard_normal(shape))
    return ChannelRealization(matrix_h=h, seed_trace=plan.as_tuple())


def sample_eavesdropper_field(
    cfg: SystemConfig, plan: SeedPlan, window_radius: float = DEFAULT_WINDOW_RADIUS
) -> EavesdropperField:
    """Sample eavesdropper positions and channels on a disc around the BS.

    The point count is Poisson with mean ``lambda_e * pi * R^2`` and distances
    follow the uniform-disc radial law.  Channel entries are i.i.d. standard
    complex Gaussian (per-entry unit variance), drawn from the companion
    eavesdropper-channel stream of the same (trial, draw) pair.
    """
    if window_radius <= 0:
        raise ValueError("window radius must be positive")
    if plan.stream_label != StreamLabel.FIELD:
        raise ValueError("sample_eavesdropper_field requires a Field-labelled plan")
    gen_pos = substream(plan)
    mean_count = cfg.eavesdropper_density * math.pi * window_radius**2
    count = int(gen_pos.poisson(mean_count)) if mean_count > 0 else 0
    distances = window_radius * np.sqrt(gen_pos.random(count))
    gen_ch = substream(replace(plan, stream_label=StreamLabel.EVE_CHANNEL))
    shape = (count, cfg.n_antennas)
    channels = math.sqrt(0.5) * (gen_ch.standard_normal(shape) + 1j * gen_ch.standard_normal(shape))
    return EavesdropperField(distances=distances, channels=channels, window_radius=window_radius)


def effective_eve_gain(channel: np.ndarray, w_k: np.ndarray) -> float:
    """Squared projection |h_e^H w_k|^2 of one field entry onto a beam."""
    return float(np.abs(np.vdot(channel, w_k)) ** 2)


def default_gamma_ref(cfg: SystemConfig) -> float:
    """Reference SINR scale for the truncation budget (large-system value)."""
    gamma, _ = asymptotics.gamma_ls(cfg.network_load, cfg.snr_linear, cfg.regularization)
    return gamma


def colluding_window_radius(
    cfg: SystemConfig,
    gamma_ref: float | None = None,
    default: float = DEFAULT_WINDOW_RADIUS,
    tail_fraction: float = TAIL_FRACTION,
) -> float:
    """Window radius keeping the neglected colluding tail immaterial.

    Grows the disc until the expected truncated-tail SINR contribution
    ``2 pi lambda_e R^(2-eta) / (sigma^2 K (eta-2))`` (for mean-1/K gains)
    drops below ``tail_fraction * gamma_ref``.
    """
    lam = cfg.eavesdropper_density
    if lam == 0:
        return default
    if gamma_ref is None:
        gamma_ref = default_gamma_ref(cfg)
    if gamma_ref <= 0:
        raise ValueError("gamma_ref must be positive")
    eta = cfg.path_loss_exponent
    sigma2 = cfg.noise_power
    needed = (
        2.0 * math.pi * lam / (sigma2 * cfg.n_users * (eta - 2.0) * tail_fraction * gamma_ref)
    ) ** (1.0 / (eta - 2.0))
    return max(default, needed)


@dataclass(frozen=True)
class FieldStats:
    """Per-field eavesdropper statistics for unit-mean channel gains.

    Each sampled point contributes ``g / (r^eta sigma^2)`` with g ~ Exp(1).
    Scaling by a beam's mean gain m turns these into that user's external
    SINR statistics: colluding ``m * sum_unit``, non-colluding ``m *
    max_unit``, nearest-only ``m * nearest_unit``.  ``sum_unit`` already
    includes ``tail_mean_unit``, the exact mean of the far field outside the
    sampled disc (zero whenever the disc covers the tail-rule radius).
    """

    sum_unit: np.ndarray
    max_unit: np.ndarray
    nearest_unit: np.ndarray
    window_radius: float
    tail_mean_unit: float


def _segment_reduce(values: np.ndarray, counts: np.ndarray):
    """Per-segment (sum, max) of consecutive runs given by counts."""
    n = counts.shape[0]
    total = int(counts.sum())
    ids = np.repeat(np.arange(n), counts)
    seg_sum = np.bincount(ids, weights=values, minlength=n)
    starts = np.zeros(n, dtype=np.int64)
    np.cumsum(counts[:-1], out=starts[1:])
    padded = np.append(values, 0.0)
    seg_max = np.maximum.reduceat(padded, np.minimum(starts, total))
    seg_max[counts == 0] = 0.0
    return seg_sum, seg_max


def sample_field_stats(
    cfg: SystemConfig,
    plan: SeedPlan,
    n_fields: int,
    window_radius: float | None = None,
    gamma_ref: float | None = None,
    gain_scale: float | None = None,
    tail_fraction: float = TAIL_FRACTION,
) -> FieldStats:
    """Bulk-sample unit-gain eavesdropper statistics for many fields.

    The gain of every point is drawn directly from its exact conditional law
    (Exp with unit mean); positions follow the Poisson disc model.  When the
    tail-rule radius would exceed the per-field point budget, an inner disc is
    sampled exactly and the far field enters the colluding sum through its
    exact mean, with the inner radius chosen so the neglected fluctuation
    stays below the same ``tail_fraction * gamma_ref`` budget.
    """
    if n_fields < 0:
        raise ValueError("n_fields must be nonnegative")
    lam = cfg.eavesdropper_density
    eta = cfg.path_loss_exponent
    sigma2 = cfg.noise_power
    if gain_scale is None:
        gain_scale = 1.0 / cfg.n_users
    if gamma_ref is None:
        gamma_ref = default_gamma_ref(cfg)

    zeros = np.zeros(n_fields)
    if lam == 0 or n_fields == 0:
        radius = window_radius if window_radius is not None else DEFAULT_WINDOW_RADIUS
        return FieldStats(zeros, zeros.copy(), zeros.copy(), radius, 0.0)

    if window_radius is None:
        window_radius = colluding_window_radius(cfg, gamma_ref, tail_fraction=tail_fraction)

    inner = window_radius
    mean_count = lam * math.pi * inner**2
    if mean_count > _MAX_POINTS_PER_FIELD:
        # Residual far-field std (unit gains, scaled by gain_scale) must stay
        # below tail_fraction * gamma_ref:
        #   std(R) = sqrt(4 pi lam / (sigma^4 (2 eta - 2))) * R^(1 - eta)
        coeff = math.sqrt(4.0 * math.pi * lam / (sigma2**2 * (2.0 * eta - 2.0)))
        budget = tail_fraction * gamma_ref / gain_scale
        r_std = (coeff / budget) ** (1.0 / (eta - 1.0))
        inner = min(window_radius, max(DEFAULT_WINDOW_RADIUS, r_std))
        mean_count = lam * math.pi * inner**2

    tail_mean_unit = 0.0
    if inner < window_radius:
        # exact mean of the entire field beyond the inner disc
        tail_mean_unit = 2.0 * math.pi * lam * inner ** (2.0 - eta) / (sigma2 * (eta - 2.0))

    fields_per_batch = max(1, int(_BATCH_POINT_BUDGET / max(mean_count, 1.0)))
    sum_unit = np.empty(n_fields)
    max_unit = np.empty(n_fields)
    nearest_unit = np.empty(n_fields)
    r2_scale = inner * inner
    half_eta = eta / 2.0

    for batch_index, start in enumerate(range(0, n_fields, fields_per_batch)):
        nb = min(fields_per_batch, n_fields - start)
        gen = substream(plan, extra=(batch_index,))
        counts = gen.poisson(mean_count, nb)
        total = int(counts.sum())
        r2 = r2_scale * gen.random(total)
        gains = gen.standard_exponential(total)
        if half_eta == 2.0:
            path = 1.0 / (sigma2 * r2 * r2)
        else:
            path = 1.0 / (sigma2 * r2**half_eta)
        vals = gains * path
        seg_sum, seg_max = _segment_reduce(vals, counts)
        sl = slice(start, start + nb)
        sum_unit[sl] = seg_sum + tail_mean_unit
        max_unit[sl] = seg_max
        # nearest point: its gain is independent of position, so a fresh
        # exponential paired with the minimum distance has the exact law
        starts = np.zeros(nb, dtype=np.int64)
        np.cumsum(counts[:-1], out=starts[1:])
        padded = np.append(r2, np.inf)
        rmin2 = np.minimum.reduceat(padded, np.minimum(starts, total))
        rmin2[counts == 0] = np.inf
        near_gain = gen.standard_exponential(nb)
        if half_eta == 2.0:
            near = near_gain / (sigma2 * rmin2 * rmin2)
        else:
            near = near_gain / (sigma2 * rmin2**half_eta)
        nearest_unit[sl] = np.where(np.isfinite(rmin2), near, 0.0)

    return FieldStats(sum_unit, max_unit, nearest_unit, inner, tail_mean_unit)
