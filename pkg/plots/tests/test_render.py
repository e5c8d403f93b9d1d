"""Rendering tests driven by CSV files built to the public sweep contract."""

import pytest

from ncbwt_plots import PlotError, PlotSpec, build_figure, load_rows, render
from ncbwt_plots.cli import main

HEADER = ("protocol,block_bytes,p,alpha,n_blocks,analytic_additional,"
          "sim_mean_additional,sim_std_additional,trials,seed")


def grid_csv(with_sim=False):
    """A small full grid: 2 protocols x 3 block sizes x 4 p values x 3 alphas."""
    lines = [HEADER]
    for protocol in ("BWT", "NC_BWT"):
        for block_bytes in (256, 512, 1024):
            n = 512_000 // block_bytes
            for p in (0.0, 0.3, 0.6, 0.9):
                for alpha in (0.3, 0.7, 1.0):
                    eff = p if protocol == "BWT" else alpha * p
                    analytic = n / (1 - eff) - n
                    sim = ("%.6f" % (analytic * 1.01), "1.0") if with_sim \
                        else ("", "")
                    lines.append("%s,%d,%g,%g,%d,%.6f,%s,%s,%d,%d" % (
                        protocol, block_bytes, p, alpha, n, analytic,
                        sim[0], sim[1], 100 if with_sim else 0, 0))
    return "\n".join(lines) + "\n"


def write(tmp_path, text, name="rows.csv"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_full_grid_three_panels(tmp_path):
    rows = load_rows(write(tmp_path, grid_csv()))
    fig = build_figure(rows)
    assert len(fig.axes) == 3
    for ax in fig.axes:
        # one curve per (protocol, block size) pair
        assert len(ax.lines) == 6
        labels = {line.get_label() for line in ax.lines}
        assert "BWT B=256" in labels
        assert "NC_BWT B=1024" in labels


def test_alpha_one_curves_coincide(tmp_path):
    rows = load_rows(write(tmp_path, grid_csv()))
    fig = build_figure(rows, panels=(1.0,))
    (ax,) = fig.axes
    by_label = {line.get_label(): line for line in ax.lines}
    for block_bytes in (256, 512, 1024):
        bwt = by_label["BWT B=%d" % block_bytes]
        nc = by_label["NC_BWT B=%d" % block_bytes]
        assert list(bwt.get_ydata()) == pytest.approx(list(nc.get_ydata()))


def test_sim_means_overlaid(tmp_path):
    rows = load_rows(write(tmp_path, grid_csv(with_sim=True)))
    fig = build_figure(rows, panels=(0.3,))
    (ax,) = fig.axes
    # each curve gains a marker-only series for the simulated means
    assert len(ax.lines) == 12
    assert any(line.get_label().endswith("(sim)") for line in ax.lines)


def test_single_row_csv(tmp_path):
    text = HEADER + "\nBWT,1024,0.5,0.3,500,500.000000,,,0,0\n"
    out = str(tmp_path / "single.png")
    render(PlotSpec(write(tmp_path, text), out))
    assert (tmp_path / "single.png").stat().st_size > 0


def test_render_writes_image(tmp_path):
    out = str(tmp_path / "fig.png")
    assert render(PlotSpec(write(tmp_path, grid_csv()), out)) == out
    assert (tmp_path / "fig.png").stat().st_size > 0


def test_unknown_columns_rejected(tmp_path):
    text = "protocol,p,extra\nBWT,0.5,1\n"
    with pytest.raises(PlotError):
        load_rows(write(tmp_path, text))


def test_empty_file_rejected(tmp_path):
    with pytest.raises(PlotError):
        load_rows(write(tmp_path, ""))


def test_header_only_rejected(tmp_path):
    with pytest.raises(PlotError):
        load_rows(write(tmp_path, HEADER + "\n"))


def test_malformed_value_rejected(tmp_path):
    text = HEADER + "\nBWT,1024,not-a-number,0.3,500,500.0,,,0,0\n"
    with pytest.raises(PlotError):
        load_rows(write(tmp_path, text))


def test_missing_panel_rejected(tmp_path):
    rows = load_rows(write(tmp_path, grid_csv()))
    with pytest.raises(PlotError):
        build_figure(rows, panels=(0.5,))


def test_cli_renders(tmp_path):
    out = str(tmp_path / "cli.png")
    assert main([write(tmp_path, grid_csv()), out]) == 0
    assert (tmp_path / "cli.png").stat().st_size > 0


def test_cli_panels_flag(tmp_path):
    out = str(tmp_path / "one.png")
    code = main([write(tmp_path, grid_csv()), out, "--panels", "0.7"])
    assert code == 0


def test_cli_error_exit(tmp_path, capsys):
    assert main([str(tmp_path / "missing.csv"), str(tmp_path / "x.png")]) == 2
    assert "error:" in capsys.readouterr().err
