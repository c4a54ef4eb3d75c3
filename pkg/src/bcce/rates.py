"""Instantaneous secrecy rates, sum rate, and the outage indicator.

All logs are base 2; rates are bits/s/Hz.  Functions broadcast over numpy
arrays and accept plain floats.
"""

from __future__ import annotations

import numpy as np

__all__ = ["bcc_rate", "bcce_rate", "sum_rate", "outage_indicator"]


def bcc_rate(gamma, gamma_m):
    """Secrecy rate against the malicious alliance, [log2((1+g)/(1+gM))]^+."""
    rate = np.log2(1.0 + np.asarray(gamma, dtype=np.float64)) - np.log2(
        1.0 + np.asarray(gamma_m, dtype=np.float64)
    )
    out = np.maximum(rate, 0.0)
    return float(out) if out.ndim == 0 else out


def bcce_rate(gamma, gamma_m, gamma_e):
    """Secrecy rate against the strongest adversary (alliance or externals)."""
    worst = np.maximum(np.asarray(gamma_m, dtype=np.float64), gamma_e)
    return bcc_rate(gamma, worst)


def sum_rate(rates) -> float:
    """Secrecy sum-rate over users."""
    return float(np.sum(rates))


def outage_indicator(gamma, gamma_m, gamma_e):
    """1 when the secrecy rate is zero; ties count as outage."""
    gamma = np.asarray(gamma, dtype=np.float64)
    out = (gamma <= gamma_m) | (np.asarray(gamma_e, dtype=np.float64) >= gamma)
    result = out.astype(np.int64)
    return int(result) if result.ndim == 0 else result
