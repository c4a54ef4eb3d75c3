"""Domain types, configuration validation, and unit conventions.

Everything downstream (sampling, precoding, SINRs, closed forms) consumes a
validated :class:`SystemConfig`.  SNR handling follows one rule: dB/linear
conversion happens once, here, and all internal math is linear-scale.  A
config given a linear SNR is normalized through its dB representation so that
serializing to the flat config-file format and parsing back reproduces the
object exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

__all__ = [
    "CollusionMode",
    "SystemConfig",
    "ChannelRealization",
    "EavesdropperField",
    "SinrReport",
    "LargeSystemPoint",
    "ClosedFormUnavailable",
    "validate_config",
    "serialize_config",
    "parse_config_text",
    "load_config_file",
]

_SEED_MASK = (1 << 64) - 1

#: Keys accepted by the flat key/value config-file format.
CONFIG_FILE_KEYS = (
    "n_antennas",
    "network_load",
    "snr_db",
    "path_loss_exponent",
    "eavesdropper_density",
    "regularization",
    "collusion_mode",
    "seed",
)


class ClosedFormUnavailable(ValueError):
    """A closed-form expression was requested outside its validity range.

    The colluding and nearest-eavesdropper closed forms hold only for a
    path-loss exponent of 4; the simulation path has no such restriction.
    """


class CollusionMode(enum.Enum):
    NON_COLLUDING = "noncolluding"
    COLLUDING = "colluding"
    NEAREST_ONLY = "nearest"

    @classmethod
    def parse(cls, value: "CollusionMode | str") -> "CollusionMode":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        table = {
            "noncolluding": cls.NON_COLLUDING,
            "colluding": cls.COLLUDING,
            "nearest": cls.NEAREST_ONLY,
            "nearestonly": cls.NEAREST_ONLY,
        }
        if key not in table:
            raise ValueError(f"unknown collusion mode {value!r}")
        return table[key]


@dataclass(frozen=True)
class SystemConfig:
    """Validated scenario parameters.

    ``snr_db`` is the canonical SNR representation; ``snr_linear`` is derived
    from it exactly once at construction, and the noise power is always the
    reciprocal of the stored linear SNR, so the pair can never drift apart.
    Instances are immutable and safe to share across concurrent trials.
    """

    n_antennas: int
    n_users: int
    network_load: float
    snr_db: float
    path_loss_exponent: float
    eavesdropper_density: float
    regularization: float
    collusion_mode: CollusionMode
    master_seed: int
    snr_linear: float = field(init=False)

    def __post_init__(self) -> None:
        N, K = self.n_antennas, self.n_users
        if N < 1:
            raise ValueError("n_antennas must be at least 1")
        if K < 1:
            raise ValueError("n_users must be at least 1")
        beta = self.network_load
        if not (beta > 0):
            raise ValueError("network load beta must be positive")
        if abs(beta - K / N) >= 1e-12:
            raise ValueError(
                f"inconsistent load: beta={beta} but K/N={K / N} (|diff| >= 1e-12)"
            )
        if K != round(beta * N):
            raise ValueError("n_users must equal round(beta * n_antennas)")
        if not (self.path_loss_exponent > 2):
            raise ValueError("path-loss exponent must exceed 2")
        if not (self.regularization > 0):
            raise ValueError("regularization xi must be positive")
        if self.eavesdropper_density < 0:
            raise ValueError("eavesdropper density must be nonnegative")
        if not math.isfinite(self.snr_db):
            raise ValueError("SNR must be finite")
        object.__setattr__(self, "snr_linear", 10.0 ** (self.snr_db / 10.0))
        object.__setattr__(self, "master_seed", int(self.master_seed) & _SEED_MASK)

    @property
    def noise_power(self) -> float:
        """Noise power sigma^2, defined as the exact reciprocal of the SNR."""
        return 1.0 / self.snr_linear

    @property
    def closed_forms_available(self) -> bool:
        """Whether the colluding/nearest closed forms apply (requires eta=4)."""
        return self.path_loss_exponent == 4.0

    def closed_form_note(self) -> str | None:
        """Human-readable note when eta != 4 disables part of the analytics."""
        if self.closed_forms_available:
            return None
        return (
            f"path-loss exponent {self.path_loss_exponent} != 4: colluding and "
            "nearest-eavesdropper closed forms are unavailable (simulation and "
            "the general non-colluding outage form remain valid)"
        )


@dataclass(frozen=True)
class ChannelRealization:
    """One K x N downlink channel draw with a record of the substream used."""

    matrix_h: np.ndarray
    seed_trace: tuple

    def __post_init__(self) -> None:
        h = np.asarray(self.matrix_h)
        if h.ndim != 2:
            raise ValueError("channel matrix must be two-dimensional")
        object.__setattr__(self, "matrix_h", np.ascontiguousarray(h, dtype=np.complex128))

    @property
    def n_users(self) -> int:
        return self.matrix_h.shape[0]

    @property
    def n_antennas(self) -> int:
        return self.matrix_h.shape[1]

    def row(self, k: int) -> np.ndarray:
        """Channel vector h_k of user k."""
        return self.matrix_h[k]


@dataclass(frozen=True)
class EavesdropperField:
    """A sampled Poisson field: per-point distance and channel vector.

    ``distances`` has shape (E,), ``channels`` shape (E, N); row e holds the
    channel vector of the eavesdropper at distance ``distances[e]``.
    """

    distances: np.ndarray
    channels: np.ndarray
    window_radius: float

    def __post_init__(self) -> None:
        d = np.asarray(self.distances, dtype=np.float64)
        c = np.ascontiguousarray(self.channels, dtype=np.complex128)
        if d.ndim != 1 or c.ndim != 2 or c.shape[0] != d.shape[0]:
            raise ValueError("distances (E,) and channels (E, N) must align")
        if d.size and (d.min() <= 0 or d.max() > self.window_radius * (1 + 1e-12)):
            raise ValueError("eavesdropper distances must lie in (0, window_radius]")
        object.__setattr__(self, "distances", d)
        object.__setattr__(self, "channels", c)

    def __len__(self) -> int:
        return int(self.distances.shape[0])


@dataclass(frozen=True)
class SinrReport:
    """Instantaneous per-user SINRs for one (channel, field) realization."""

    legit: np.ndarray
    malicious: np.ndarray
    external: np.ndarray
    mode: CollusionMode

    def __post_init__(self) -> None:
        for name in ("legit", "malicious", "external"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            if arr.ndim != 1:
                raise ValueError(f"{name} SINRs must be a flat per-user array")
            if not np.all(np.isfinite(arr)) or np.any(arr < 0):
                raise ValueError(f"{name} SINRs must be finite and nonnegative")
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class LargeSystemPoint:
    """Deterministic equivalents and closed-form summary for one config."""

    gamma_ls: float          # legitimate-user SINR
    gamma_m_ls: float        # malicious-alliance SINR
    r_bcc_ls: float          # secrecy rate without external eavesdroppers
    outage_ls: float         # secrecy outage probability
    p_ls: float              # P(eavesdroppers beat the malicious alliance)
    r_mean_ls: float         # mean secrecy rate with external eavesdroppers
    delta_ub: float          # upper bound on the rate loss
    mu: float                # pi^{3/2} / (2 sqrt(beta sigma^2))
    nu: float                # rate-loss bound constant

    def __post_init__(self) -> None:
        for name in ("outage_ls", "p_ls"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name}={v} is not a probability")
        for name in ("gamma_ls", "gamma_m_ls", "r_bcc_ls", "r_mean_ls", "delta_ub"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


def _as_float(raw: Mapping, key: str, default: float | None = None) -> float | None:
    if key not in raw or raw[key] is None:
        return default
    return float(raw[key])


def validate_config(raw: Mapping) -> SystemConfig:
    """Build a :class:`SystemConfig` from a flat parameter record.

    Accepted keys: ``n_antennas`` (or ``n``), one of ``n_users``/``k`` or
    ``network_load``/``beta``, one of ``snr_db`` or ``snr_linear``/``rho``,
    ``path_loss_exponent``/``eta`` (default 4), ``eavesdropper_density``/
    ``lambda_e`` (default 0), ``regularization``/``xi``, ``collusion_mode``/
    ``mode`` (default non-colluding), ``seed``/``master_seed`` (default 0).
    When both user count and load are given, the user count is authoritative.
    """
    raw = dict(raw)

    def pick(*names, default=None):
        for name in names:
            if name in raw and raw[name] is not None:
                return raw[name]
        return default

    n = pick("n_antennas", "n")
    if n is None:
        raise ValueError("n_antennas is required")
    n = int(n)

    k = pick("n_users", "k")
    beta = pick("network_load", "beta")
    if k is not None:
        k = int(k)
        beta = k / n
    elif beta is not None:
        beta = float(beta)
        k = round(beta * n)
        if k < 1:
            raise ValueError(f"network load {beta} gives no users at N={n}")
        if abs(beta - k / n) >= 1e-12:
            raise ValueError(
                f"network load {beta} is inconsistent with an integer user count at N={n}"
            )
    else:
        raise ValueError("either n_users or network_load is required")

    snr_db = _as_float(raw, "snr_db")
    if snr_db is None:
        rho = pick("snr_linear", "rho")
        if rho is None:
            raise ValueError("either snr_db or snr_linear is required")
        rho = float(rho)
        if not (rho > 0):
            raise ValueError("linear SNR must be positive")
        snr_db = 10.0 * math.log10(rho)

    eta = float(pick("path_loss_exponent", "eta", default=4.0))
    lam = float(pick("eavesdropper_density", "lambda_e", default=0.0))
    xi = pick("regularization", "xi")
    if xi is None:
        raise ValueError("regularization xi is required")
    mode = CollusionMode.parse(pick("collusion_mode", "mode", default=CollusionMode.NON_COLLUDING))
    seed = int(pick("seed", "master_seed", default=0))

    return SystemConfig(
        n_antennas=n,
        n_users=k,
        network_load=beta,
        snr_db=snr_db,
        path_loss_exponent=eta,
        eavesdropper_density=lam,
        regularization=float(xi),
        collusion_mode=mode,
        master_seed=seed,
    )


def serialize_config(cfg: SystemConfig) -> str:
    """Render a config as the flat key/value text format."""
    lines = [
        f"n_antennas = {cfg.n_antennas}",
        f"network_load = {cfg.network_load!r}",
        f"snr_db = {cfg.snr_db!r}",
        f"path_loss_exponent = {cfg.path_loss_exponent!r}",
        f"eavesdropper_density = {cfg.eavesdropper_density!r}",
        f"regularization = {cfg.regularization!r}",
        f"collusion_mode = {cfg.collusion_mode.value}",
        f"seed = {cfg.master_seed}",
    ]
    return "\n".join(lines) + "\n"


def parse_config_text(text: str) -> dict:
    """Parse the flat key/value format into a raw parameter record."""
    record: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in body.split("=", 1))
        if key not in CONFIG_FILE_KEYS:
            raise ValueError(f"line {lineno}: unknown config key {key!r}")
        record[key] = value
    return record


def load_config_file(path) -> SystemConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return validate_config(parse_config_text(fh.read()))
