"""Draw the six publication figures from experiment CSVs.

Simulated statistics appear as markers (with error bars where the CSV
carries a standard error), closed-form counterparts as lines.  SVG output is
byte-reproducible: the element-id hash salt is pinned and the creation date
dropped.  Nothing is recomputed here; the CSV is the single source.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "bcce-figures"

import matplotlib.pyplot as plt
import numpy as np

from .schema import Table, load_table, normalize_figure_id

__all__ = ["render"]

_MODE_LABEL = {
    "noncolluding": "non-colluding",
    "colluding": "colluding",
    "nearest": "nearest-only",
}

_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]
_MARKERS = ["o", "s", "^", "v", "D", "p", "*", "X"]


def _style(index: int) -> dict:
    return {"color": _COLORS[index % len(_COLORS)], "marker": _MARKERS[index % len(_MARKERS)]}


def _series(ax, rows, x_key, sim_key, se_key, line_key, label, index):
    xs = np.array([row[x_key] for row in rows], dtype=float)
    style = _style(index)
    sim = [row[sim_key] for row in rows]
    if any(v is not None for v in sim):
        err = [row.get(se_key) for row in rows] if se_key else None
        has_err = err is not None and all(v is not None for v in err)
        ax.errorbar(
            xs,
            np.array(sim, dtype=float),
            yerr=np.array(err, dtype=float) if has_err else None,
            linestyle="none",
            marker=style["marker"],
            color=style["color"],
            markersize=5,
            capsize=2,
            label=f"{label} (simulated)",
        )
    if line_key is not None:
        line = [row[line_key] for row in rows]
        if all(v is not None for v in line):
            ax.plot(
                xs,
                np.array(line, dtype=float),
                linestyle="-",
                color=style["color"],
                label=f"{label} (closed form)",
            )


def _lambda_label(value: float) -> str:
    return f"$\\lambda_e$={value:g}"


def _draw_fig2(table: Table, ax, loglog: bool) -> None:
    for index, ((mode, lam), rows) in enumerate(
        table.groups("collusion_mode", "eavesdropper_density")
    ):
        label = f"{_MODE_LABEL.get(mode, mode)}, {_lambda_label(lam)}"
        _series(
            ax, rows, "n_antennas", "sim_outage", "sim_outage_se", "analytic_outage_ls", label, index
        )
    ax.set_xlabel("transmit antennas $N$")
    ax.set_ylabel("secrecy outage probability")
    if loglog:
        ax.set_xscale("log")
        ax.set_yscale("log")
        # inverse-square-root guide anchored at the first analytic point
        anchored = [r for r in table.rows if r["analytic_outage_ls"] is not None]
        if anchored:
            first = anchored[0]
            ns = np.array(sorted({row["n_antennas"] for row in table.rows}), dtype=float)
            guide = first["analytic_outage_ls"] * np.sqrt(first["n_antennas"] / ns)
            ax.plot(ns, guide, linestyle=":", color="black", label="$N^{-1/2}$ guide")


def _draw_fig3(table: Table, ax, loglog: bool) -> None:
    for index, ((mode, beta), rows) in enumerate(table.groups("collusion_mode", "network_load")):
        label = f"{_MODE_LABEL.get(mode, mode)}, $\\beta$={beta:g}"
        _series(
            ax,
            rows,
            "snr_db",
            "sim_sum_rate_per_antenna",
            "sim_sum_rate_per_antenna_se",
            "analytic_sum_rate_per_antenna",
            label,
            index,
        )
    ax.set_xlabel("SNR $\\rho$ (dB)")
    ax.set_ylabel("per-antenna secrecy sum-rate (bits/s/Hz)")


def _draw_fig4(table: Table, ax, loglog: bool) -> None:
    for index, ((mode, lam), rows) in enumerate(
        table.groups("collusion_mode", "eavesdropper_density")
    ):
        label = f"{_MODE_LABEL.get(mode, mode)}, {_lambda_label(lam)}"
        _series(
            ax, rows, "n_antennas", "sim_user_rate", "sim_user_rate_se", "analytic_user_rate",
            label, index,
        )
    ax.set_xlabel("transmit antennas $N$")
    ax.set_ylabel("per-user secrecy rate (bits/s/Hz)")


def _draw_fig5(table: Table, ax, loglog: bool) -> None:
    index = 0
    for (mode, lam), rows in table.groups("collusion_mode", "eavesdropper_density"):
        label = f"{_MODE_LABEL.get(mode, mode)}, {_lambda_label(lam)}"
        _series(
            ax, rows, "n_antennas", "sim_user_rate", "sim_user_rate_se", "analytic_user_rate",
            label, index,
        )
        index += 1
    # the no-eavesdropper baseline is mode-independent; draw it once per density
    for (lam,), rows in table.groups("eavesdropper_density"):
        seen = {}
        for row in rows:
            seen.setdefault(row["n_antennas"], row)
        rows = [seen[n] for n in sorted(seen)]
        _series(
            ax, rows, "n_antennas", "sim_bcc_user_rate", "sim_bcc_user_rate_se",
            "analytic_bcc_user_rate", "no external eavesdroppers", index,
        )
        index += 1
    ax.set_xlabel("transmit antennas $N$")
    ax.set_ylabel("per-user secrecy rate (bits/s/Hz)")


def _draw_fig6(table: Table, ax, loglog: bool) -> None:
    for index, ((mode,), rows) in enumerate(table.groups("collusion_mode")):
        label = _MODE_LABEL.get(mode, mode)
        _series(
            ax, rows, "eavesdropper_density", "xi_bar", None, "xi_bcce_ls",
            f"{label}", index,
        )
    first = table.rows[0]
    lams = np.array(sorted({row["eavesdropper_density"] for row in table.rows}), dtype=float)
    ax.plot(lams, np.full_like(lams, first["xi_bcc"]), "k--", linewidth=0.8,
            label="$\\xi$ optimum, malicious users only")
    ax.plot(lams, np.full_like(lams, first["xi_bc"]), "k-.", linewidth=0.8,
            label="$\\xi$ optimum, no secrecy")
    ax.set_xscale("log")
    ax.set_xlabel("eavesdropper density $\\lambda_e$")
    ax.set_ylabel("regularization parameter $\\xi$ (dimensionless)")


def _draw_fig7(table: Table, ax, loglog: bool) -> None:
    for index, ((snr, lam), rows) in enumerate(table.groups("snr_db", "eavesdropper_density")):
        xs = np.array([row["n_antennas"] for row in rows], dtype=float)
        gaps = np.array([row["gap_norm"] for row in rows], dtype=float) * 100.0
        ses = [row["gap_norm_se"] for row in rows]
        style = _style(index)
        ax.errorbar(
            xs,
            gaps,
            yerr=np.array(ses, dtype=float) * 100.0 if all(v is not None for v in ses) else None,
            marker=style["marker"],
            color=style["color"],
            capsize=2,
            label=f"$\\rho$={snr:g} dB, {_lambda_label(lam)}",
        )
    ax.set_xlabel("transmit antennas $N$")
    ax.set_ylabel("normalized sum-rate gap (%)")


_DRAWERS = {
    "fig2": _draw_fig2,
    "fig3": _draw_fig3,
    "fig4": _draw_fig4,
    "fig5": _draw_fig5,
    "fig6": _draw_fig6,
    "fig7": _draw_fig7,
}

_TITLES = {
    "fig2": "Secrecy outage probability vs antennas",
    "fig3": "Per-antenna secrecy sum-rate vs SNR",
    "fig4": "Per-user secrecy rate vs antennas",
    "fig5": "Secrecy rate with and without external eavesdroppers",
    "fig6": "Regularization choices vs eavesdropper density",
    "fig7": "Loss of the closed-form regularization vs per-draw optimum",
}


def render(figure: str, csv_path, out_path, png: bool = False, loglog: bool = False) -> str:
    """Render one figure id from its CSV; returns the output path."""
    figure = normalize_figure_id(figure)
    table = load_table(figure, csv_path)
    fig, ax = plt.subplots(figsize=(7.2, 4.8), constrained_layout=True)
    try:
        _DRAWERS[figure](table, ax, loglog)
        ax.set_title(_TITLES[figure])
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
        if png:
            fig.savefig(out_path, format="png", dpi=150)
        else:
            fig.savefig(out_path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    return str(out_path)
