"""CSV schemas of the experiment pipelines and a validating loader.

The renderer never recomputes any science: every plotted number comes out of
the CSV, and the header is checked against the expected schema before
anything is drawn.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

__all__ = ["SchemaError", "Table", "FIGURE_IDS", "STAT_COLUMNS", "load_table"]


class SchemaError(ValueError):
    """The CSV does not match the experiment schema for the figure."""


ECHO_COLUMNS = [
    "figure",
    "n_antennas",
    "n_users",
    "network_load",
    "snr_db",
    "path_loss_exponent",
    "eavesdropper_density",
    "regularization",
    "collusion_mode",
    "seed",
    "n_trials",
    "n_fields_per_trial",
]

STAT_COLUMNS = {
    "fig2": [
        "sim_outage",
        "sim_outage_se",
        "sim_outage_cond",
        "sim_outage_cond_se",
        "analytic_outage_ls",
        "analytic_outage_alt",
    ],
    "fig3": [
        "sim_sum_rate_per_antenna",
        "sim_sum_rate_per_antenna_se",
        "analytic_sum_rate_per_antenna",
    ],
    "fig4": ["sim_user_rate", "sim_user_rate_se", "analytic_user_rate"],
    "fig5": [
        "sim_user_rate",
        "sim_user_rate_se",
        "analytic_user_rate",
        "sim_bcc_user_rate",
        "sim_bcc_user_rate_se",
        "analytic_bcc_user_rate",
        "rate_loss_ub",
    ],
    "fig6": [
        "xi_bc",
        "xi_bcc",
        "xi_bcce_ls",
        "xi_bcce_ls_converged",
        "xi_bar",
        "xi_bar_converged",
    ],
    "fig7": [
        "mean_sum_rate_star",
        "mean_sum_rate_ls_xi",
        "gap_norm",
        "gap_norm_se",
        "xi_bcce_ls",
    ],
}

#: canonical figure ids, with the experiment-engine names as aliases
FIGURE_IDS = {
    "fig2": "fig2",
    "fig3": "fig3",
    "fig4": "fig4",
    "fig5": "fig5",
    "fig6": "fig6",
    "fig7": "fig7",
    "outagevsn": "fig2",
    "sumratevssnr": "fig3",
    "ratevsn": "fig4",
    "bccvsbcce": "fig5",
    "xivsdensity": "fig6",
    "xigapvsn": "fig7",
}

_STRING_COLUMNS = {"figure", "collusion_mode", "flag"}
_INT_COLUMNS = {"n_antennas", "n_users", "seed", "n_trials", "n_fields_per_trial"}


def normalize_figure_id(figure: str) -> str:
    key = figure.strip().lower()
    if key not in FIGURE_IDS:
        raise SchemaError(f"unknown figure id {figure!r}")
    return FIGURE_IDS[key]


@dataclass
class Table:
    """Validated rows of one experiment CSV."""

    figure: str
    rows: list[dict]

    def column(self, name: str) -> list:
        return [row[name] for row in self.rows]

    def groups(self, *keys):
        """Rows grouped by the given columns, in first-seen order."""
        order: list[tuple] = []
        grouped: dict[tuple, list[dict]] = {}
        for row in self.rows:
            key = tuple(row[k] for k in keys)
            if key not in grouped:
                grouped[key] = []
                order.append(key)
            grouped[key].append(row)
        return [(key, grouped[key]) for key in order]


def _convert(name: str, value: str):
    if name in _STRING_COLUMNS:
        return value
    if value == "":
        return None
    if name in _INT_COLUMNS:
        return int(value)
    return float(value)


def load_table(figure: str, csv_path) -> Table:
    """Load and validate one experiment CSV against its figure schema."""
    figure = normalize_figure_id(figure)
    expected = ECHO_COLUMNS + STAT_COLUMNS[figure] + ["flag"]
    with open(csv_path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{csv_path}: empty file, no header row") from None
        missing = [name for name in expected if name not in header]
        if missing:
            raise SchemaError(f"{csv_path}: missing column {missing[0]!r} for {figure}")
        extra = [name for name in header if name not in expected]
        if extra:
            raise SchemaError(f"{csv_path}: unexpected column {extra[0]!r} for {figure}")
        rows = []
        for lineno, record in enumerate(reader, start=2):
            if len(record) != len(header):
                raise SchemaError(f"{csv_path}:{lineno}: expected {len(header)} cells")
            try:
                rows.append({n: _convert(n, v) for n, v in zip(header, record)})
            except ValueError as exc:
                raise SchemaError(f"{csv_path}:{lineno}: {exc}") from None
    if not rows:
        raise SchemaError(f"{csv_path}: no data rows")
    return Table(figure=figure, rows=rows)
