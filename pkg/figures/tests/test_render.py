import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from bcce_figures.cli import main
from bcce_figures.render import render
from bcce_figures.schema import SchemaError, load_table

DATA = Path(__file__).parent / "data"
FIGS = ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7"]


@pytest.mark.parametrize("figure", FIGS)
def test_renders_valid_svg(figure, tmp_path):
    out = tmp_path / f"{figure}.svg"
    render(figure, DATA / f"{figure}.csv", out)
    root = ET.parse(out).getroot()
    assert root.tag.endswith("svg")
    assert out.stat().st_size > 1000


@pytest.mark.parametrize("figure", FIGS)
def test_byte_identical_reruns(figure, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    render(figure, DATA / f"{figure}.csv", a)
    render(figure, DATA / f"{figure}.csv", b)
    assert a.read_bytes() == b.read_bytes()


def test_alias_names_accepted(tmp_path):
    out = tmp_path / "alias.svg"
    render("OutageVsN", DATA / "fig2.csv", out)
    assert out.exists()


def test_png_output(tmp_path):
    out = tmp_path / "fig2.png"
    render("fig2", DATA / "fig2.csv", out, png=True)
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_loglog_option(tmp_path):
    out = tmp_path / "fig2_loglog.svg"
    render("fig2", DATA / "fig2.csv", out, loglog=True)
    plain = tmp_path / "fig2_plain.svg"
    render("fig2", DATA / "fig2.csv", plain)
    assert out.read_bytes() != plain.read_bytes()


class TestSchemaValidation:
    def test_missing_column_named(self, tmp_path):
        source = (DATA / "fig2.csv").read_text().splitlines()
        header = source[0].split(",")
        drop = header.index("analytic_outage_ls")
        mangled = "\n".join(
            ",".join(cell for i, cell in enumerate(line.split(",")) if i != drop)
            for line in source
        )
        bad = tmp_path / "bad.csv"
        bad.write_text(mangled + "\n")
        with pytest.raises(SchemaError, match="analytic_outage_ls"):
            load_table("fig2", bad)

    def test_wrong_figure_schema(self):
        with pytest.raises(SchemaError, match="missing column"):
            load_table("fig6", DATA / "fig2.csv")

    def test_empty_csv_rejected(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text((DATA / "fig2.csv").read_text().splitlines()[0] + "\n")
        with pytest.raises(SchemaError, match="no data rows"):
            load_table("fig2", empty)

    def test_unknown_figure(self):
        with pytest.raises(SchemaError, match="unknown figure id"):
            load_table("fig9", DATA / "fig2.csv")


class TestCli:
    def test_render_command(self, tmp_path, capsys):
        out = tmp_path / "out.svg"
        assert main(["fig2", str(DATA / "fig2.csv"), "-o", str(out)]) == 0
        assert str(out) in capsys.readouterr().out
        assert out.exists()

    def test_schema_error_exit(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("only,two\n1,2\n")
        assert main(["fig2", str(bad), "-o", str(tmp_path / "x.svg")]) == 1
        err = capsys.readouterr().err
        assert "figure" in err  # first missing column is named

    def test_no_image_on_empty_csv(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text((DATA / "fig2.csv").read_text().splitlines()[0] + "\n")
        out = tmp_path / "nothing.svg"
        assert main(["fig2", str(empty), "-o", str(out)]) == 1
        assert not out.exists()
