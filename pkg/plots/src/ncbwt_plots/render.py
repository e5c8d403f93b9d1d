"""Turn a sweep CSV into a figure: one panel per alpha, additional blocks
versus p, one curve per (protocol, block size) pair.

Only the public CSV contract is consumed; the analytic column draws the
curves and simulated means, when present, are overlaid as markers.
"""

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

EXPECTED_COLUMNS = (
    "protocol", "block_bytes", "p", "alpha", "n_blocks",
    "analytic_additional", "sim_mean_additional", "sim_std_additional",
    "trials", "seed",
)


class PlotError(ValueError):
    pass


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    out_path: str
    panels: tuple = field(default=())   # alphas; empty = every alpha in the file


@dataclass(frozen=True)
class Row:
    protocol: str
    block_bytes: int
    p: float
    alpha: float
    analytic: float
    sim_mean: float | None
    sim_std: float | None


def _parse_row(raw) -> Row:
    try:
        return Row(
            protocol=raw["protocol"],
            block_bytes=int(raw["block_bytes"]),
            p=float(raw["p"]),
            alpha=float(raw["alpha"]),
            analytic=float(raw["analytic_additional"]),
            sim_mean=float(raw["sim_mean_additional"])
            if raw["sim_mean_additional"] else None,
            sim_std=float(raw["sim_std_additional"])
            if raw["sim_std_additional"] else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise PlotError("malformed CSV row %r: %s" % (raw, exc))


def load_rows(path) -> list:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise PlotError("CSV is empty")
        if tuple(reader.fieldnames) != EXPECTED_COLUMNS:
            raise PlotError(
                "unexpected CSV columns %r" % (reader.fieldnames,))
        rows = [_parse_row(raw) for raw in reader]
    if not rows:
        raise PlotError("CSV has a header but no data rows")
    return rows


def build_figure(rows, panels=()):
    """One subplot per alpha; returns the matplotlib figure."""
    alphas = tuple(panels) if panels else tuple(sorted({r.alpha for r in rows}))
    for alpha in alphas:
        if not any(r.alpha == alpha for r in rows):
            raise PlotError("no rows for panel alpha=%g" % alpha)

    fig, axes = plt.subplots(1, len(alphas), squeeze=False,
                             figsize=(4.5 * len(alphas), 4.0), sharey=True)
    for ax, alpha in zip(axes[0], alphas):
        panel_rows = [r for r in rows if r.alpha == alpha]
        series = sorted({(r.protocol, r.block_bytes) for r in panel_rows})
        for protocol, block_bytes in series:
            pts = sorted((r.p, r) for r in panel_rows
                         if r.protocol == protocol and r.block_bytes == block_bytes)
            xs = [p for p, _ in pts]
            ys = [r.analytic for _, r in pts]
            label = "%s B=%d" % (protocol, block_bytes)
            line, = ax.plot(xs, ys, marker=".", label=label)
            sim = [(p, r.sim_mean) for p, r in pts if r.sim_mean is not None]
            if sim:
                ax.plot([p for p, _ in sim], [m for _, m in sim],
                        linestyle="none", marker="o", fillstyle="none",
                        color=line.get_color(), label=label + " (sim)")
        ax.set_title("alpha = %g" % alpha)
        ax.set_xlabel("p")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize="small")
    axes[0][0].set_ylabel("additional blocks")
    fig.tight_layout()
    return fig


def render(spec: PlotSpec) -> str:
    rows = load_rows(spec.csv_path)
    fig = build_figure(rows, spec.panels)
    try:
        fig.savefig(spec.out_path)
    finally:
        plt.close(fig)
    return spec.out_path
