"""Regularized channel-inversion precoding and its power normalization.

W = zeta^(-1/2) H^H (H H^H + N xi I_K)^(-1), with zeta chosen so the matrix
carries unit Frobenius norm.  The Hermitian positive-definite solve runs on
whichever Gram side is smaller; zeta falls out of the same factorization as
the squared norm of the unnormalized solution, which pins ||W||_F^2 = 1 to
machine precision by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .model import ChannelRealization, SystemConfig

__all__ = ["PrecodeResult", "build_rci"]


@dataclass(frozen=True)
class PrecodeResult:
    """Precoding matrix (N x K, unit Frobenius norm) and its normalizer."""

    matrix_w: np.ndarray
    zeta: float

    def __post_init__(self) -> None:
        if not (self.zeta > 0):
            raise ValueError("power normalization zeta must be positive")

    @property
    def n_users(self) -> int:
        return self.matrix_w.shape[1]

    def column(self, k: int) -> np.ndarray:
        """Beam w_k serving user k."""
        return self.matrix_w[:, k]

    @property
    def per_user_power(self) -> np.ndarray:
        """||w_k||^2 per user; sums to 1."""
        return np.sum(np.abs(self.matrix_w) ** 2, axis=0)


def build_rci(
    h: ChannelRealization | np.ndarray,
    cfg: SystemConfig,
    xi: float | None = None,
    side: str = "auto",
) -> PrecodeResult:
    """Build the regularized-inversion precoder for one channel realization.

    ``side`` selects the Gram matrix to factorize: "k" uses the K x K form
    H H^H + N xi I, "n" the N x N form H^H H + N xi I (the two are
    algebraically identical), "auto" picks the smaller one.
    """
    matrix = h.matrix_h if isinstance(h, ChannelRealization) else np.asarray(h, dtype=np.complex128)
    if matrix.ndim != 2:
        raise ValueError("channel matrix must be K x N")
    n_users, n_antennas = matrix.shape
    if xi is None:
        xi = cfg.regularization
    if not (xi > 0):
        raise ValueError("regularization xi must be positive")
    if side == "auto":
        side = "k" if n_users <= n_antennas else "n"
    if side not in ("k", "n"):
        raise ValueError("side must be one of 'auto', 'k', 'n'")

    shift = n_antennas * xi
    try:
        if side == "k":
            gram = matrix @ matrix.conj().T
            gram[np.diag_indices(n_users)] += shift
            solved = cho_solve(cho_factor(gram, lower=True), matrix)  # (HH^H+NxiI)^-1 H
            unnormalized = solved.conj().T
        else:
            gram = matrix.conj().T @ matrix
            gram[np.diag_indices(n_antennas)] += shift
            unnormalized = cho_solve(cho_factor(gram, lower=True), matrix.conj().T)
    except LinAlgError as exc:
        raise ValueError(
            f"RCI Gram factorization failed (N={n_antennas}, K={n_users}, xi={xi}): {exc}"
        ) from exc

    zeta = float(np.sum(np.abs(unnormalized) ** 2))
    if not (zeta > 0) or not np.isfinite(zeta):
        raise ValueError(f"degenerate power normalization zeta={zeta}")
    return PrecodeResult(matrix_w=unnormalized / np.sqrt(zeta), zeta=zeta)
